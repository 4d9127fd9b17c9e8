//! Command-line front end: generate corpus objects, run validators and
//! computations, and execute the verification suite. Every verb is a thin
//! wrapper over the library; exit codes are 0 (pass), 1 (check failure),
//! 2 (input error).

mod files;

use clap::{Parser, Subcommand};
use files::{load_bundle, load_map, load_presheaf, presheaf_to_json, save_bundle};
use reedykit::ez::{
    boundary, cellular_filtration, is_normal_mono, standard_decomposition, EzStructure,
};
use reedykit::monoidal::{pushout_product, quasi_monoidal_check, CartesianOracle};
use reedykit::reedy::{latching, matching, skeleton, coskeleton};
use reedykit::suite::{run_all, SuiteConfig, random_subpresheaf_ambient, random_mono};
use reedykit::SplitMix64;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "reedykit", about = "finite generalized Reedy category toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// machine-readable JSON on stdout where supported
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a corpus object and write its bundle file
    Gen {
        /// simplex | cyclic | symmetric | fin | gamma | orbit | cog | group |
        /// product | coproduct
        kind: String,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
        /// group name for orbit/group kinds: z2, z3, z4, s3, trivial
        #[arg(long, default_value = "z2")]
        group: String,
        /// number of objects for the group(oid) kind
        #[arg(long, default_value_t = 1)]
        objects: usize,
        /// orbit variant: minus | plus
        #[arg(long, default_value = "minus")]
        variant: String,
        /// parts for product/coproduct, e.g. "simplex:1,simplex:1"
        #[arg(long)]
        parts: Option<String>,
        #[arg(short, long)]
        output: PathBuf,
        /// write a DOT graph instead of JSON
        #[arg(long)]
        dot: bool,
    },
    /// Validate files: category laws, Reedy axioms, EZ axioms, crossed identities
    Check {
        /// category | reedy | ez | crossed
        what: String,
        files: Vec<PathBuf>,
    },
    /// Build the total category of the crossed group in a bundle
    Total {
        bundle: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Latching object of a presheaf at an object
    Latch {
        bundle: PathBuf,
        presheaf: PathBuf,
        #[arg(long)]
        object: usize,
    },
    /// Matching object of a presheaf at an object
    Match {
        bundle: PathBuf,
        presheaf: PathBuf,
        #[arg(long)]
        object: usize,
    },
    /// n-skeleton of a presheaf
    Skel {
        n: i64,
        bundle: PathBuf,
        presheaf: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// n-coskeleton of a presheaf
    Coskel {
        n: i64,
        bundle: PathBuf,
        presheaf: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Formal boundary of a representable presheaf
    Boundary {
        bundle: PathBuf,
        #[arg(long)]
        object: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Standard decomposition of a presheaf element
    Decompose {
        bundle: PathBuf,
        presheaf: PathBuf,
        #[arg(long)]
        object: usize,
        #[arg(long)]
        element: usize,
    },
    /// Three-way normal-monomorphism verdict for a presheaf map
    Normal {
        bundle: PathBuf,
        x: PathBuf,
        y: PathBuf,
        map: PathBuf,
        /// also dump the cellular filtration stages
        #[arg(long)]
        filtration: bool,
    },
    /// Sample pushout-products of normal monos and check the axiom
    PpAxiom {
        /// corpus member: simplex2 | simplex3 | cyclic2 | sym2 | gamma2 | fin2
        #[arg(long, default_value = "simplex3")]
        corpus: String,
        #[arg(long, default_value_t = 25)]
        sample: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Run the full verification suite
    Suite {
        #[arg(long, default_value = "default")]
        corpus: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// random presheaves per category in the skeletal sweep
        #[arg(long, default_value_t = 50)]
        presheaves: usize,
        /// random monomorphisms per category in the three-way check
        #[arg(long, default_value_t = 200)]
        sample: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn ez_by_name(name: &str) -> Result<EzStructure, String> {
    let (cat, s) = match name {
        "simplex2" => reedykit::generators::simplex_trunc(2),
        "simplex3" => reedykit::generators::simplex_trunc(3),
        "cyclic2" => reedykit::generators::cyclic_trunc(2),
        "sym2" => reedykit::generators::sym_trunc(2),
        "gamma2" => reedykit::generators::gamma_trunc(2),
        "fin2" => reedykit::generators::fin_trunc(2),
        other => return Err(format!("unknown corpus member {other}")),
    };
    EzStructure::new(cat, s.degree.clone()).map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Gen {
            kind,
            max_degree,
            group,
            objects,
            variant,
            parts,
            output,
            dot,
        } => {
            let bundle = files::generate(&kind, max_degree, &group, objects, &variant, parts.as_deref())?;
            if dot {
                let cat = files::bundle_category(&bundle)?;
                std::fs::write(&output, cat.to_dot()).map_err(|e| e.to_string())?;
            } else {
                save_bundle(&bundle, &output)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { what, files } => {
            let mut all_pass = true;
            for path in &files {
                let (pass, report) = check_file(&what, path)?;
                all_pass &= pass;
                if cli.json {
                    println!("{report}");
                } else {
                    println!(
                        "{}: {}",
                        path.display(),
                        if pass { "ok" } else { &report }
                    );
                }
            }
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Total { bundle, output } => {
            let b = load_bundle(&bundle)?;
            let total = files::total_bundle(&b)?;
            save_bundle(&total, &output)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Latch {
            bundle,
            presheaf,
            object,
        } => {
            let b = load_bundle(&bundle)?;
            let (sop, x) = load_presheaf(&b, &presheaf)?;
            let l = latching(&sop, &x, object);
            let out = serde_json::json!({
                "object": object,
                "size": l.object.size,
                "group": l.object.group.elements,
                "action": l.object.action,
                "map": l.map,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Command::Match {
            bundle,
            presheaf,
            object,
        } => {
            let b = load_bundle(&bundle)?;
            let (sop, x) = load_presheaf(&b, &presheaf)?;
            let m = matching(&sop, &x, object);
            let out = serde_json::json!({
                "object": object,
                "size": m.object.size,
                "group": m.object.group.elements,
                "action": m.object.action,
                "map": m.map,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Command::Skel {
            n,
            bundle,
            presheaf,
            output,
        } => {
            let b = load_bundle(&bundle)?;
            let (sop, x) = load_presheaf(&b, &presheaf)?;
            let sk = skeleton(&sop, &x, n);
            files::save_json(&presheaf_to_json(&sk.diagram, &bundle), &output)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Coskel {
            n,
            bundle,
            presheaf,
            output,
        } => {
            let b = load_bundle(&bundle)?;
            let (sop, x) = load_presheaf(&b, &presheaf)?;
            let ck = coskeleton(&sop, &x, n);
            files::save_json(&presheaf_to_json(&ck.diagram, &bundle), &output)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Boundary {
            bundle,
            object,
            output,
        } => {
            let b = load_bundle(&bundle)?;
            let ez = files::bundle_ez(&b)?;
            let (bd, _) = boundary(&ez, object);
            files::save_json(&presheaf_to_json(&bd, &bundle), &output)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Decompose {
            bundle,
            presheaf,
            object,
            element,
        } => {
            let b = load_bundle(&bundle)?;
            let ez = files::bundle_ez(&b)?;
            let (_, x) = load_presheaf(&b, &presheaf)?;
            if object >= ez.cat.n_objects() || element >= x.size(object) {
                return Err("object or element out of range".into());
            }
            let d = standard_decomposition(&ez, &x, object, element);
            let out = serde_json::json!({
                "degeneracy": ez.cat.mor_name(d.degeneracy),
                "target_object": d.target_object,
                "element": d.element,
                "decompositions": d.all.len(),
                "essentially_unique": d.essentially_unique,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(if d.essentially_unique {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Normal {
            bundle,
            x,
            y,
            map,
            filtration,
        } => {
            let b = load_bundle(&bundle)?;
            let ez = files::bundle_ez(&b)?;
            let (_, xd) = load_presheaf(&b, &x)?;
            let (_, yd) = load_presheaf(&b, &y)?;
            let phi = load_map(&map, &xd, &yd)?;
            let report = is_normal_mono(&ez, &phi);
            let mut out = serde_json::json!({
                "via_i": report.via_i,
                "via_ii": report.via_ii,
                "via_iii": report.via_iii,
                "witness": report.witness,
            });
            if filtration {
                if let Ok(stages) = cellular_filtration(&ez, &phi) {
                    out["filtration"] = serde_json::to_value(&stages).unwrap();
                }
            }
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(if report.agree() && report.is_normal() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::PpAxiom {
            corpus,
            sample,
            seed,
        } => {
            let ez = ez_by_name(&corpus)?;
            let oracle = CartesianOracle;
            let shape = ez.op_shape().clone();
            let max = ez.max_degree();
            let low: Vec<usize> = ez
                .cat
                .object_ids()
                .filter(|&o| 2 * ez.deg(o) <= max)
                .collect();
            let mut rng = SplitMix64::new(seed);
            let mut verdicts = Vec::new();
            let mut all_normal = true;
            for _ in 0..sample {
                let yu = random_subpresheaf_ambient(&mut rng, &shape, &low);
                let u = random_mono(&mut rng, &yu);
                let yv = random_subpresheaf_ambient(&mut rng, &shape, &low);
                let v = random_mono(&mut rng, &yv);
                match pushout_product(&ez, &oracle, &u, &v) {
                    Ok((_, verdict)) => {
                        all_normal &= verdict.agree() && verdict.is_normal();
                        verdicts.push(serde_json::json!({
                            "normal": verdict.is_normal(),
                            "agree": verdict.agree(),
                        }));
                    }
                    Err(e) => {
                        all_normal = false;
                        verdicts.push(serde_json::json!({ "error": e.to_string() }));
                    }
                }
            }
            let pairs: Vec<(usize, usize)> = ez
                .cat
                .object_ids()
                .flat_map(|r| ez.cat.object_ids().map(move |s| (r, s)))
                .filter(|&(r, s)| ez.deg(r) + ez.deg(s) <= max)
                .collect();
            let qm = quasi_monoidal_check(&ez, &oracle, &pairs).map_err(|e| e.to_string())?;
            let report = serde_json::json!({
                "corpus": corpus,
                "seed": seed,
                "sample": sample,
                "pushout_products": verdicts,
                "quasi_monoidal": qm,
            });
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            Ok(if all_normal && qm.passes() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Suite {
            corpus,
            seed,
            presheaves,
            sample,
        } => {
            let config = SuiteConfig {
                seed,
                corpus,
                presheaves_per_category: presheaves,
                monos_per_category: sample,
                pushout_product_pairs: 100,
            };
            let report = run_all(&config);
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                for c in &report.criteria {
                    println!(
                        "[{}] criterion {:>2} {:<24} ({} ms)",
                        if c.passed { "PASS" } else { "FAIL" },
                        c.id,
                        c.name,
                        c.millis
                    );
                    if !c.passed {
                        println!("       {}", c.details);
                    }
                }
                println!(
                    "suite: {} (seed {}, {} ms)",
                    if report.passed() { "PASS" } else { "FAIL" },
                    report.seed,
                    report.total_millis
                );
            }
            Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn check_file(what: &str, path: &PathBuf) -> Result<(bool, String), String> {
    let b = load_bundle(path)?;
    match what {
        "category" => {
            let cat = files::bundle_category(&b)?;
            let report = cat.validate();
            Ok((
                report.is_valid(),
                serde_json::to_string(&report).unwrap(),
            ))
        }
        "reedy" => {
            let s = files::bundle_structure(&b)?;
            let cat_ok = s.category.validate().is_valid();
            let report = s.validate_reedy(b.reedy.as_ref().is_some_and(|r| r.dualizable));
            Ok((
                cat_ok && report.passes(),
                serde_json::to_string(&report).unwrap(),
            ))
        }
        "ez" => {
            let s = files::bundle_structure(&b)?;
            let report = reedykit::ez::ez_axioms_report(&s.category, &s.degree);
            Ok((report.passes(), serde_json::to_string(&report).unwrap()))
        }
        "crossed" => {
            let crossed = files::bundle_crossed(&b)?;
            let report = crossed.validate().map_err(|e| e.to_string())?;
            Ok((report.passes(), serde_json::to_string(&report).unwrap()))
        }
        other => Err(format!("unknown check kind {other}")),
    }
}
