//! Command-line front end: parse algebra/complex/surface files, run the
//! analyses, and emit deterministic JSON reports.
//!
//! Exit codes: 0 = computed (whatever the verdict), 1 = input error,
//! 2 = precondition violation (e.g. an endomorphism algebra that only
//! splits over a quadratic extension, or a reflection class with
//! χ(f,f) ≠ 2).

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use spherelike::complex::PerfectComplex;
use spherelike::hom::is_isomorphic;
use spherelike::kgroup::{
    check_braid, check_involution, euler_pairing_surface, reflect, BraidVerdict,
};
use spherelike::sphere::{
    asphericality, check_calabi_yau, classify, membership_witness, twist, twist_left,
    Classification, Flavor,
};
use spherelike::textio::{
    parse_algebra, parse_complex, parse_lattice, parse_surface, serialize_complex,
};
use spherelike::Error;

#[derive(Parser, Debug, Clone)]
#[command(name = "spherelike", version, about = "Spherelike objects, twist functors and spherical subcategories over bound quiver algebras")]
struct Cli {
    /// Seed for every randomized isomorphism test.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Trial budget for randomized isomorphism tests.
    #[arg(long, global = true, default_value_t = 8)]
    trials: u32,

    /// Also write the JSON report to this file.
    #[arg(long, global = true, value_name = "OUT")]
    json: Option<PathBuf>,

    /// Run every command listed in a manifest file (one command line per
    /// row) and emit the reports as one JSON array.
    #[arg(long, value_name = "FILE")]
    batch: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug, Clone)]
enum Command {
    /// Classify an object and, when spherelike, report its asphericality.
    Analyze {
        algebra: PathBuf,
        complex: PathBuf,
    },
    /// Apply the twist functor T_F (or its left adjoint with --left) to an
    /// object and print the minimal model.
    Twist {
        algebra: PathBuf,
        f: PathBuf,
        a: PathBuf,
        #[arg(long)]
        left: bool,
    },
    /// Decide membership of U in the spherical subcategory of F.
    Member {
        algebra: PathBuf,
        f: PathBuf,
        u: PathBuf,
    },
    /// Randomized homotopy-category isomorphism test between two objects;
    /// a positive answer is certified by an explicit contractible cone.
    Isomorphic {
        algebra: PathBuf,
        a: PathBuf,
        b: PathBuf,
    },
    /// K-group reflection calculus and surface Riemann-Roch pairings.
    Kgroup {
        #[command(subcommand)]
        sub: KgroupCommand,
    },
}

#[derive(Subcommand, Debug, Clone)]
enum KgroupCommand {
    /// Verify that the reflection along f is an involution.
    Involution {
        lattice: PathBuf,
        /// Number of seeded random sample vectors on top of the basis check.
        #[arg(long, default_value_t = 16)]
        samples: u32,
    },
    /// Classify the pair (e, f) as commuting, braiding, or neither.
    Braid { lattice: PathBuf },
    /// Euler pairings and canonical twists of the classes listed in a
    /// surface file.
    Surface { surface: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, code)) => {
            let text = serde_json::to_string_pretty(&report).expect("report serializes");
            println!("{}", text);
            if let Some(path) = &cli.json {
                if let Err(e) = fs::write(path, format!("{}\n", text)) {
                    eprintln!("error: cannot write {}: {}", path.display(), e);
                    return ExitCode::from(1);
                }
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(error_exit_code(&e))
        }
    }
}

fn error_exit_code(e: &Error) -> u8 {
    match e {
        Error::IrreducibleQuadratic { .. }
        | Error::NotSpherelike(_)
        | Error::NotReflectionClass(_) => 2,
        _ => 1,
    }
}

fn run(cli: &Cli) -> Result<(Value, u8), Error> {
    if let Some(manifest) = &cli.batch {
        if cli.command.is_some() {
            return Err(Error::Parse {
                line: 0,
                msg: "--batch cannot be combined with a command".into(),
            });
        }
        return run_batch(cli, manifest);
    }
    let Some(command) = &cli.command else {
        return Err(Error::Parse {
            line: 0,
            msg: "expected a command or --batch FILE (see --help)".into(),
        });
    };
    match command {
        Command::Analyze { algebra, complex } => cmd_analyze(cli, algebra, complex),
        Command::Twist { algebra, f, a, left } => cmd_twist(cli, algebra, f, a, *left),
        Command::Member { algebra, f, u } => cmd_member(cli, algebra, f, u),
        Command::Isomorphic { algebra, a, b } => cmd_isomorphic(cli, algebra, a, b),
        Command::Kgroup { sub } => cmd_kgroup(cli, sub),
    }
}

fn cmd_isomorphic(
    cli: &Cli,
    algebra: &PathBuf,
    a_path: &PathBuf,
    b_path: &PathBuf,
) -> Result<(Value, u8), Error> {
    let alg = parse_algebra(&read_file(algebra)?)?;
    let a = parse_complex(&read_file(a_path)?, &alg)?;
    let b = parse_complex(&read_file(b_path)?, &alg)?;
    let verdict = is_isomorphic(&a, &b, cli.seed, cli.trials)?;
    let report = json!({
        "command": "isomorphic",
        "inputs": {
            "algebra": file_stamp(algebra)?,
            "a": file_stamp(a_path)?,
            "b": file_stamp(b_path)?,
        },
        "seed": cli.seed,
        "trials": cli.trials,
        "result": {
            // a `false` only means no isomorphism was found in the budget
            "isomorphic": verdict,
        },
    });
    Ok((report, 0))
}

fn run_batch(cli: &Cli, manifest: &PathBuf) -> Result<(Value, u8), Error> {
    let text = read_file(manifest)?;
    let mut reports = Vec::new();
    let mut worst: u8 = 0;
    for (i, raw_line) in text.lines().enumerate() {
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut argv = vec!["spherelike".to_string()];
        argv.extend(line.split_whitespace().map(str::to_string));
        let sub = Cli::try_parse_from(&argv).map_err(|e| Error::Parse {
            line: i + 1,
            msg: format!("bad batch line: {}", e),
        })?;
        if sub.batch.is_some() {
            return Err(Error::Parse {
                line: i + 1,
                msg: "batch manifests cannot nest".into(),
            });
        }
        // the batch-level seed and trials are defaults for each line
        let has_flag = |name: &str| line.split_whitespace().any(|t| t == name);
        let merged = Cli {
            seed: if has_flag("--seed") { sub.seed } else { cli.seed },
            trials: if has_flag("--trials") { sub.trials } else { cli.trials },
            json: None,
            batch: None,
            command: sub.command,
        };
        let (report, code) = run(&merged)?;
        worst = worst.max(code);
        reports.push(report);
    }
    let report = json!({
        "command": "batch",
        "inputs": { "manifest": file_stamp(manifest)? },
        "seed": cli.seed,
        "trials": cli.trials,
        "reports": reports,
    });
    Ok((report, worst))
}

fn read_file(path: &PathBuf) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("cannot read {}: {}", path.display(), e),
    })
}

fn file_stamp(path: &PathBuf) -> Result<Value, Error> {
    let bytes = fs::read(path).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("cannot read {}: {}", path.display(), e),
    })?;
    let digest = Sha256::digest(&bytes);
    let hex: String = digest.iter().map(|b| format!("{:02x}", b)).collect();
    Ok(json!({ "path": path.display().to_string(), "sha256": hex }))
}

fn dims_table(dims: &std::collections::BTreeMap<i32, usize>) -> Value {
    Value::Array(
        dims.iter()
            .map(|(&n, &d)| json!([n, d]))
            .collect::<Vec<_>>(),
    )
}

fn graded_terms_json(c: &PerfectComplex) -> Value {
    Value::Array(
        c.graded_terms()
            .iter()
            .map(|(&d, labels)| {
                json!([
                    d,
                    labels.iter().map(|v| format!("P{}", v + 1)).collect::<Vec<_>>()
                ])
            })
            .collect(),
    )
}

fn classification_json(c: &Classification) -> Value {
    match c {
        Classification::Zero => json!({ "kind": "zero" }),
        Classification::Exceptional => json!({ "kind": "exceptional" }),
        Classification::Spherelike { d, flavor } => {
            let fl = match flavor {
                Flavor::NotApplicable => Value::Null,
                Flavor::Nilpotent => json!("nilpotent"),
                Flavor::Disconnected => json!("disconnected"),
                Flavor::IrreducibleQuadratic => json!("irreducible-quadratic"),
            };
            json!({ "kind": "spherelike", "d": d, "flavor": fl })
        }
        Classification::Other => json!({ "kind": "other" }),
    }
}

fn cmd_analyze(cli: &Cli, algebra: &PathBuf, complex: &PathBuf) -> Result<(Value, u8), Error> {
    let alg = parse_algebra(&read_file(algebra)?)?;
    let f = parse_complex(&read_file(complex)?, &alg)?;
    let report = classify(&f)?;
    let mut result = json!({
        "classification": classification_json(&report.classification),
        "verdict": report.classification.describe(),
        "hom_ff": dims_table(&report.hom_dims),
    });
    let mut code = 0u8;
    if let Classification::Spherelike { ref flavor, .. } = report.classification {
        if *flavor == Flavor::IrreducibleQuadratic {
            result["asphericality_error"] =
                json!("endomorphism algebra splits over a quadratic extension only");
            code = 2;
        } else {
            let data = asphericality(&f)?;
            let spherical = data.q.is_zero();
            result["spherical"] = json!(spherical);
            result["verdict"] = json!(format!(
                "{}, {}",
                report.classification.describe(),
                if spherical { "spherical" } else { "properly spherelike" }
            ));
            result["q_terms"] = graded_terms_json(&data.q);
        }
    }
    let report = json!({
        "command": "analyze",
        "inputs": {
            "algebra": file_stamp(algebra)?,
            "complex": file_stamp(complex)?,
        },
        "seed": cli.seed,
        "trials": cli.trials,
        "result": result,
    });
    Ok((report, code))
}

fn cmd_twist(
    cli: &Cli,
    algebra: &PathBuf,
    f_path: &PathBuf,
    a_path: &PathBuf,
    left: bool,
) -> Result<(Value, u8), Error> {
    let alg = parse_algebra(&read_file(algebra)?)?;
    let f = parse_complex(&read_file(f_path)?, &alg)?;
    let a = parse_complex(&read_file(a_path)?, &alg)?;
    let image = if left { twist_left(&f, &a)? } else { twist(&f, &a)? };
    let report = json!({
        "command": "twist",
        "inputs": {
            "algebra": file_stamp(algebra)?,
            "f": file_stamp(f_path)?,
            "a": file_stamp(a_path)?,
        },
        "seed": cli.seed,
        "trials": cli.trials,
        "result": {
            "left": left,
            "terms": graded_terms_json(&image),
            "complex_text": serialize_complex(&image),
        },
    });
    Ok((report, 0))
}

fn cmd_member(
    cli: &Cli,
    algebra: &PathBuf,
    f_path: &PathBuf,
    u_path: &PathBuf,
) -> Result<(Value, u8), Error> {
    let alg = parse_algebra(&read_file(algebra)?)?;
    let f = parse_complex(&read_file(f_path)?, &alg)?;
    let u = parse_complex(&read_file(u_path)?, &alg)?;
    let class = classify(&f)?;
    let inputs = json!({
        "algebra": file_stamp(algebra)?,
        "f": file_stamp(f_path)?,
        "u": file_stamp(u_path)?,
    });
    match asphericality(&f) {
        Ok(data) => {
            let witness = membership_witness(&u, &data)?;
            let member = witness.values().all(|&d| d == 0);
            let verdicts = check_calabi_yau(&data, std::slice::from_ref(&u))?;
            let report = json!({
                "command": "member",
                "inputs": inputs,
                "seed": cli.seed,
                "trials": cli.trials,
                "result": {
                    "classification_f": classification_json(&class.classification),
                    "member": member,
                    "witness_hom_u_q": dims_table(&witness),
                    "calabi_yau_pairing": {
                        "dims_ok": verdicts[0].dims_ok,
                        "pairing_ok": verdicts[0].pairing_ok,
                    },
                },
            });
            Ok((report, 0))
        }
        Err(Error::NotSpherelike(desc)) => {
            let report = json!({
                "command": "member",
                "inputs": inputs,
                "seed": cli.seed,
                "trials": cli.trials,
                "result": {
                    "classification_f": classification_json(&class.classification),
                    "error": format!("F is not spherelike: {}", desc),
                },
            });
            Ok((report, 2))
        }
        Err(e) => Err(e),
    }
}

fn cmd_kgroup(cli: &Cli, sub: &KgroupCommand) -> Result<(Value, u8), Error> {
    match sub {
        KgroupCommand::Involution { lattice, samples } => {
            let lf = parse_lattice(&read_file(lattice)?)?;
            let f = lf.f.ok_or_else(|| Error::Parse {
                line: 0,
                msg: "lattice file needs an `f` line".into(),
            })?;
            let chi = lf.lattice.pairing(&f, &f)?;
            if chi != 2 {
                let report = json!({
                    "command": "kgroup-involution",
                    "inputs": { "lattice": file_stamp(lattice)? },
                    "seed": cli.seed,
                    "trials": cli.trials,
                    "result": { "chi_ff": chi, "error": "reflection needs chi(f,f) = 2" },
                });
                return Ok((report, 2));
            }
            let ok = check_involution(&lf.lattice, &f, *samples, cli.seed)?;
            let minus_f: Vec<i64> = f.iter().map(|x| -x).collect();
            let reflected = reflect(&lf.lattice, &f, &f)?;
            let report = json!({
                "command": "kgroup-involution",
                "inputs": { "lattice": file_stamp(lattice)? },
                "seed": cli.seed,
                "trials": cli.trials,
                "result": {
                    "chi_ff": chi,
                    "involution": ok,
                    "reflect_f_is_minus_f": reflected == minus_f,
                    "samples": samples,
                },
            });
            Ok((report, 0))
        }
        KgroupCommand::Braid { lattice } => {
            let lf = parse_lattice(&read_file(lattice)?)?;
            let (Some(e), Some(f)) = (lf.e.clone(), lf.f.clone()) else {
                return Err(Error::Parse {
                    line: 0,
                    msg: "lattice file needs `e` and `f` lines".into(),
                });
            };
            let verdict = check_braid(&lf.lattice, &e, &f)?;
            let s = lf.lattice.pairing(&e, &f)?;
            let report = json!({
                "command": "kgroup-braid",
                "inputs": { "lattice": file_stamp(lattice)? },
                "seed": cli.seed,
                "trials": cli.trials,
                "result": {
                    "s": s,
                    "verdict": match verdict {
                        BraidVerdict::Commute => "commute",
                        BraidVerdict::Braid => "braid",
                        BraidVerdict::Neither => "neither",
                    },
                },
            });
            Ok((report, 0))
        }
        KgroupCommand::Surface { surface } => {
            let sf = parse_surface(&read_file(surface)?)?;
            let mut pairings = Vec::new();
            for (i, e) in sf.classes.iter().enumerate() {
                for (j, f) in sf.classes.iter().enumerate() {
                    let chi = euler_pairing_surface(&sf.model, e, f)?;
                    pairings.push(json!([i, j, chi.to_string()]));
                }
            }
            let twisted: Result<Vec<Value>, Error> = sf
                .classes
                .iter()
                .map(|c| {
                    let t = c.tensor_canonical(&sf.model)?;
                    Ok(json!({
                        "r": t.rank,
                        "c1": t.c1,
                        "ch2": t.ch2.to_string(),
                    }))
                })
                .collect();
            let report = json!({
                "command": "kgroup-surface",
                "inputs": { "surface": file_stamp(surface)? },
                "seed": cli.seed,
                "trials": cli.trials,
                "result": {
                    "classes": sf.classes.iter().map(|c| json!({
                        "r": c.rank,
                        "c1": c.c1,
                        "ch2": c.ch2.to_string(),
                    })).collect::<Vec<_>>(),
                    "pairings": pairings,
                    "tensor_canonical": twisted?,
                },
            });
            Ok((report, 0))
        }
    }
}
