//! Batch front-end: `holoext <solve|decompose|map|verify> <input> [flags]`.

use std::path::PathBuf;
use std::process::ExitCode;

use holoext::io::{cmd_decompose, cmd_map, cmd_solve, cmd_verify, CliFlags};

const USAGE: &str = "\
usage: holoext <subcommand> <input> [flags]

subcommands:
  solve <problem.json>        solve a boundary/puncture interpolation problem
  decompose <measure.json>    split an annulus measure into one-sided pieces
  map <domain.json>           chart a two-circle domain onto a standard annulus
  verify <result.json>        re-run all checks on a stored result

flags:
  --out PATH         output file (default result.json / decomposition.json)
  --csv PATH         write plot data (boundary samples or boundary images)
  --samples N        boundary samples per circle
  --safety X         bound safety factor in (0, 1)
  --truncation J     coefficient truncation order for decompose (default 64)
  --seedless         assert the run uses no randomness (always true)

exit codes: 0 all checks pass, 1 parse or I/O error, 2 solver or check failure
";

fn parse_flags(args: &[String]) -> Result<CliFlags, String> {
    let mut flags = CliFlags::default();
    let mut i = 0;
    let value = |i: &mut usize, name: &str| -> Result<String, String> {
        *i += 1;
        args.get(*i)
            .cloned()
            .ok_or_else(|| format!("flag {name} needs a value"))
    };
    while i < args.len() {
        match args[i].as_str() {
            "--out" => flags.out = Some(PathBuf::from(value(&mut i, "--out")?)),
            "--csv" => flags.csv = Some(PathBuf::from(value(&mut i, "--csv")?)),
            "--samples" => {
                let v = value(&mut i, "--samples")?;
                flags.samples =
                    Some(v.parse().map_err(|_| format!("bad --samples value: {v}"))?);
            }
            "--safety" => {
                let v = value(&mut i, "--safety")?;
                flags.safety = Some(v.parse().map_err(|_| format!("bad --safety value: {v}"))?);
            }
            "--truncation" => {
                let v = value(&mut i, "--truncation")?;
                flags.truncation =
                    Some(v.parse().map_err(|_| format!("bad --truncation value: {v}"))?);
            }
            "--seedless" => flags.seedless = true,
            other => return Err(format!("unknown flag: {other}")),
        }
        i += 1;
    }
    Ok(flags)
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.len() < 2 {
        eprint!("{USAGE}");
        return ExitCode::from(1);
    }
    let subcommand = args[0].as_str();
    let input = PathBuf::from(&args[1]);
    let flags = match parse_flags(&args[2..]) {
        Ok(flags) => flags,
        Err(message) => {
            eprintln!("error: {message}");
            eprint!("{USAGE}");
            return ExitCode::from(1);
        }
    };
    let result = match subcommand {
        "solve" => cmd_solve(&input, &flags),
        "decompose" => cmd_decompose(&input, &flags),
        "map" => cmd_map(&input, &flags),
        "verify" => cmd_verify(&input, &flags),
        other => {
            eprintln!("error: unknown subcommand: {other}");
            eprint!("{USAGE}");
            return ExitCode::from(1);
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
