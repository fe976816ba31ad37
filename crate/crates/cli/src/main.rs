//! Command-line front end: validation, semidualizing verification,
//! (co)resolutions, cones, homology, quasiisomorphism checks, minimization,
//! width, exact zero-divisor discovery, and the C/xC pipeline.
//!
//! Exit codes: 0 verified/computed, 1 refuted (with witness), 2 input
//! error, 3 bound exceeded or undecided.

use clap::{Parser, Subcommand};
use cproj_core::complex::{cone, is_quasiiso, minimize, minimize_via};
use cproj_core::cproj::{
    coresolution_criterion, hereditary_probe, minimal_pc_coresolution, minimal_pc_resolution,
    pc_pd, CoresolutionVerdict, HereditaryVerdict, PcResolution,
};
use cproj_core::files::{complex_to_file, Workspace};
use cproj_core::module::{pd, ModuleError};
use cproj_core::perfect::{
    ex3_verify, find_exact_zero_divisors, width, CPerfectComplex, ExactZeroDivisorPair,
    PerfectError,
};
use cproj_core::semidual::{verify_semidualizing, Semidualizing, SemidualVerdict};
use cproj_core::{AlgebraRef, FinModule};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_REFUTED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_UNKNOWN: u8 = 3;

#[derive(Parser)]
#[command(
    name = "cproj",
    version,
    about = "Exact homological algebra over finite local GF(p)-algebras"
)]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized isomorphism sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Ring file operations.
    Ring {
        #[command(subcommand)]
        sub: RingCmd,
    },
    /// Module file operations.
    Module {
        #[command(subcommand)]
        sub: ModuleCmd,
    },
    /// Semidualizing verification.
    Semidual {
        #[command(subcommand)]
        sub: SemidualCmd,
    },
    /// Minimal P_C-resolution of a module.
    Resolve {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        semidual: String,
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = 8)]
        length: usize,
        /// Ext bound used to verify the semidualizing module.
        #[arg(long, default_value_t = 10)]
        bound: usize,
    },
    /// Minimal P_C-coresolution of a module, plus the biduality criterion.
    Coresolve {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        semidual: String,
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = 8)]
        length: usize,
        #[arg(long, default_value_t = 10)]
        bound: usize,
    },
    /// P_C-projective dimension (0 or ∞).
    Pcpd {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        semidual: String,
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = 10)]
        bound: usize,
    },
    /// Mapping cone of a chain map file.
    Cone {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        ring: Option<String>,
    },
    /// Homology of a complex file.
    Homology {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        degree: Option<i64>,
    },
    /// Quasiisomorphism verdict for a chain map file, by cone acyclicity.
    Quasiiso {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        ring: Option<String>,
    },
    /// Strip split summands from a complex of free (or C-projective) modules.
    Minimize {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        ring: Option<String>,
        /// Route through Hom(C, −) for complexes of C-projectives.
        #[arg(long)]
        semidual: Option<String>,
        #[arg(long, default_value_t = 10)]
        bound: usize,
    },
    /// Width of a C-perfect complex via its minimal representative.
    Width {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        semidual: String,
        #[arg(long, default_value_t = 10)]
        bound: usize,
    },
    /// Find exact zero-divisor pairs on the ring and a module.
    FindEzd {
        #[arg(long)]
        ring: String,
        #[arg(long, default_value = "@ring")]
        module: String,
    },
    /// The C/xC pipeline: periodic resolution, coresolution, hom
    /// comparisons, widths.
    Ex3 {
        #[arg(long)]
        ring: String,
        #[arg(long, default_value = "@ring")]
        semidual: String,
        /// Pair as two element expressions, e.g. "x,x" or "x+y,x+y".
        #[arg(long)]
        pair: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        bound: usize,
    },
    /// Enumerate submodules of C ⊗ R^s and test each for C-projectivity.
    HereditaryProbe {
        #[arg(long)]
        ring: String,
        #[arg(long, default_value = "@ring")]
        semidual: String,
        #[arg(long, default_value_t = 1)]
        rank: usize,
        #[arg(long, default_value_t = 10)]
        bound: usize,
    },
    /// Bundled corpus operations.
    Corpus {
        #[command(subcommand)]
        sub: CorpusCmd,
    },
}

#[derive(Subcommand)]
enum RingCmd {
    /// Validate a ring file and print its report.
    Check { file: String },
}

#[derive(Subcommand)]
enum ModuleCmd {
    /// Validate a module file and print its invariants.
    Check {
        file: String,
        #[arg(long)]
        ring: Option<String>,
    },
}

#[derive(Subcommand)]
enum SemidualCmd {
    /// Check the semidualizing conditions up to an Ext bound.
    Verify {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = 10)]
        bound: usize,
    },
}

#[derive(Subcommand)]
enum CorpusCmd {
    /// List the bundled corpus entries.
    List,
}

struct Output {
    exit: u8,
    text: String,
    json: Value,
}

fn ok(text: String, json: Value) -> Output {
    Output { exit: EXIT_OK, text, json }
}

fn refuted(text: String, json: Value) -> Output {
    Output { exit: EXIT_REFUTED, text, json }
}

fn input_error(msg: String) -> Output {
    Output { exit: EXIT_INPUT, text: format!("error: {msg}"), json: json!({ "error": msg }) }
}

fn unknown(text: String, json: Value) -> Output {
    Output { exit: EXIT_UNKNOWN, text, json }
}

fn perfect_error(e: PerfectError) -> Output {
    match e {
        PerfectError::SearchSpaceExceeded { size } => unknown(
            format!("search space exceeded: {size} ring elements"),
            json!({"unknown": "search space exceeded", "size": size}),
        ),
        other => input_error(other.to_string()),
    }
}

fn load_semidual(
    ws: &mut Workspace,
    alg: &AlgebraRef,
    spec: &str,
    bound: usize,
) -> Result<Semidualizing, Output> {
    let (_, m) = ws
        .load_module(Some(alg), spec)
        .map_err(|e| input_error(e.to_string()))?;
    Semidualizing::verify(m, bound)
        .map_err(|e| input_error(format!("--semidual {spec} failed verification: {e}")))
}

fn resolution_json(rep: &PcResolution, ring: Option<String>) -> Value {
    json!({
        "summary": rep.summary,
        "complex": complex_to_file(&rep.complex, ring.clone()),
        "augmented": complex_to_file(&rep.augmented, ring),
    })
}

fn resolution_text(kind: &str, rep: &PcResolution) -> String {
    let s = &rep.summary;
    let mut out = format!(
        "{kind}: betti {:?}, minimal: {}, properness: {:?}, truncated at {}{}\n",
        s.betti,
        s.is_minimal,
        s.properness,
        s.truncated_at,
        if s.finished { " (finished)" } else { "" }
    );
    if let Some((j, t)) = s.periodicity {
        out.push_str(&format!("periodic with period {t} from degree {j}\n"));
    }
    out.push_str(&format!("augmented homology: {:?}\n", s.augmented_homology));
    out.push_str(&format!("functor-side homology: {:?}", s.functor_homology));
    out
}

fn parse_pair(alg: &AlgebraRef, cm: &FinModule, s: &str) -> Result<ExactZeroDivisorPair, Output> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(input_error(format!(
            "--pair wants two element expressions separated by a comma, got `{s}`"
        )));
    }
    let x = alg.parse_element(parts[0]).map_err(|e| input_error(e.to_string()))?;
    let y = alg.parse_element(parts[1]).map_err(|e| input_error(e.to_string()))?;
    ExactZeroDivisorPair::check(alg, cm, x, y).map_err(|e| input_error(e.to_string()))
}

fn run(cli: Cli) -> Output {
    let mut ws = Workspace::from_env();
    let seed = cli.seed;
    match cli.cmd {
        Cmd::Ring { sub: RingCmd::Check { file } } => match ws.load_ring(&file) {
            Ok(alg) => ok(
                format!(
                    "valid: dim {}, p = {}, nilpotency {}, basis [{}]",
                    alg.dim(),
                    alg.p(),
                    alg.nilpotency_index(),
                    alg.spec().basis_names.join(", ")
                ),
                json!({
                    "valid": true,
                    "p": alg.p(),
                    "dim": alg.dim(),
                    "nilpotency": alg.nilpotency_index(),
                    "basis": alg.spec().basis_names,
                }),
            ),
            Err(cproj_core::files::FileError::Algebra(e)) => refuted(
                format!("invalid ring: {e}"),
                json!({"valid": false, "witness": e.to_string()}),
            ),
            Err(e) => input_error(e.to_string()),
        },
        Cmd::Module { sub: ModuleCmd::Check { file, ring } } => {
            let alg = match ring {
                Some(r) => match ws.load_ring(&r) {
                    Ok(a) => Some(a),
                    Err(e) => return input_error(e.to_string()),
                },
                None => None,
            };
            match ws.load_module(alg.as_ref(), &file) {
                Ok((alg, m)) => ok(
                    format!(
                        "valid module: dim {}, ν = {}, pd = {}, radical filtration {:?}",
                        m.dim(),
                        m.min_generators(),
                        pd(&m),
                        m.radical_filtration()
                    ),
                    json!({
                        "valid": true,
                        "dim": m.dim(),
                        "min_generators": m.min_generators(),
                        "pd": pd(&m).to_string(),
                        "radical_filtration": m.radical_filtration(),
                        "ring_dim": alg.dim(),
                    }),
                ),
                Err(cproj_core::files::FileError::Module(e)) => refuted(
                    format!("invalid module: {e}"),
                    json!({"valid": false, "witness": e.to_string()}),
                ),
                Err(e) => input_error(e.to_string()),
            }
        }
        Cmd::Semidual { sub: SemidualCmd::Verify { ring, module, bound } } => {
            let alg = match ws.load_ring(&ring) {
                Ok(a) => a,
                Err(e) => return input_error(e.to_string()),
            };
            let (_, m) = match ws.load_module(Some(&alg), &module) {
               Ok(x) => x,
                Err(e) => return input_error(e.to_string()),
            };
            match verify_semidualizing(&m, bound) {
                Ok(report) => {
                    let j = json!({"seed": seed, "report": report});
                    match &report.verdict {
                        SemidualVerdict::VerifiedToBound => ok(
                            format!(
                                "Verified-to-bound {bound}: homothety iso, Ext^1..Ext^{bound} vanish, faithful"
                            ),
                            j,
                        ),
                        SemidualVerdict::Refuted(w) => refuted(format!("Refuted: {w:?}"), j),
                    }
                }
                Err(e) => input_error(e.to_string()),
            }
        }
        Cmd::Resolve { ring, semidual, module, length, bound } => {
            let alg = match ws.load_ring(&ring) {
                Ok(a) => a,
                Err(e) => return input_error(e.to_string()),
            };
            let sd = match load_semidual(&mut ws, &alg, &semidual, bound) {
                Ok(s) => s,
                Err(o) => return o,
            };
            let (_, m) = match ws.load_module(Some(&alg), &module) {
                Ok(x) => x,
                Err(e) => return input_error(e.to_string()),
            };
            match minimal_pc_resolution(&m, &sd, length) {
                Ok(rep) => ok(
                    resolution_text("resolution", &rep),
                    json!({"seed": seed, "resolution": resolution_json(&rep, Some(ring))}),
                ),
                Err(e) => input_error(e.to_string()),
            }
        }
        Cmd::Coresolve { ring, semidual, module, length, bound } => {
            let alg = match ws.load_ring(&ring) {
                Ok(a) => a,
                Err(e) => return input_error(e.to_string()),
            };
            let sd = match load_semidual(&mut ws, &alg, &semidual, bound) {
                Ok(s) => s,
                Err(o) => return o,
            };
            let (_, m) = match ws.load_module(Some(&alg), &module) {
                Ok(x) => x,
                Err(e) => return input_error(e.to_string()),
            };
            let criterion = match coresolution_criterion(&m, &sd, bound) {
                Ok(c) => c,
                Err(e) => return input_error(e.to_string()),
            };
            match minimal_pc_coresolution(&m, &sd, length) {
                Ok(rep) => {
                    let exit = match criterion.verdict {
                        CoresolutionVerdict::UnknownBeyondBound => EXIT_UNKNOWN,
                        _ => EXIT_OK,
                    };
                    let mut out = ok(
                        format!(
                            "{}\ncriterion: {:?}",
                            resolution_text("coresolution", &rep),
                            criterion.verdict
                        ),
                        json!({
                            "seed": seed,
                            "coresolution": resolution_json(&rep, Some(ring)),
                            "criterion": criterion,
                        }),
                    );
                    out.exit = exit;
                    out
                }
                Err(e) => input_error(e.to_string()),
            }
        }
        Cmd::Pcpd { ring, semidual, module, bound } => {
            let alg = match ws.load_ring(&ring) {
                Ok(a) => a,
                Err(e) => return input_error(e.to_string()),
            };
            let sd = match load_semidual(&mut ws, &alg, &semidual, bound) {
                Ok(s) => s,
                Err(o) => return o,
            };
            let (_, m) = match ws.load_module(Some(&alg), &module) {
                Ok(x) => x,
                Err(e) => return input_error(e.to_string()),
            };
            match pc_pd(&m, &sd) {
                Ok(v) => {
                    let free_pd = pd(&m);
                    ok(
                        format!("P_C-pd = {v}   (pd = {free_pd})"),
                        json!({"pc_pd": v.to_string(), "pd": free_pd.to_string()}),
                    )
                }
                Err(e) => input_error(e.to_string()),
            }
        }
        Cmd::Cone { map, ring } => {
            let alg = match ring {
                Some(r) => match ws.load_ring(&r) {
                    Ok(a) => Some(a),
                    Err(e) => return input_error(e.to_string()),
                },
                None => None,
            };
            match ws.load_chainmap(alg.as_ref(), &map) {
                Ok((_, alpha)) => {
                    let c = cone(&alpha);
                    let file = complex_to_file(&c, None);
                    ok(
                        format!(
                            "cone: degrees {}..={}, dims {:?}, homology {:?}",
                            c.lo(),
                            c.hi(),
                            c.dims(),
                            c.homology_dims()
                        ),
                        json!({"cone": file, "homology": c.homology_dims()}),
                    )
                }
                Err(e) => input_error(e.to_string()),
            }
        }
        Cmd::Homology { complex, ring, degree } => {
            let alg = match ring {
                Some(r) => match ws.load_ring(&r) {
                    Ok(a) => Some(a),
                    Err(e) => return input_error(e.to_string()),
                },
                None => None,
            };
            match ws.load_complex(alg.as_ref(), &complex) {
                Ok((_, x)) => {
                    let dims: Vec<(i64, usize)> = match degree {
                        Some(n) => vec![(n, x.homology(n).dim())],
                        None => x.homology_dims(),
                    };
                    ok(
                        dims.iter()
                            .map(|(n, d)| format!("H_{n} has dimension {d}"))
                            .collect::<Vec<_>>()
                            .join("\n"),
                        json!({"homology": dims, "exact": dims.iter().all(|&(_, d)| d == 0)}),
                    )
                }
                Err(e) => input_error(e.to_string()),
            }
        }
        Cmd::Quasiiso { map, ring } => {
            let alg = match ring {
                Some(r) => match ws.load_ring(&r) {
                    Ok(a) => Some(a),
                    Err(e) => return input_error(e.to_string()),
                },
                None => None,
            };
            match ws.load_chainmap(alg.as_ref(), &map) {
                Ok((_, alpha)) => {
                    let (is, cert) = is_quasiiso(&alpha);
                    let j = json!({"quasiiso": is, "certificate": cert});
                    if is {
                        ok("quasiisomorphism: cone is acyclic".into(), j)
                    } else {
                        refuted("not a quasiisomorphism: cone has homology".into(), j)
                    }
                }
                Err(e) => input_error(e.to_string()),
            }
        }
        Cmd::Minimize { complex, ring, semidual, bound } => {
            let alg = match ring {
                Some(r) => match ws.load_ring(&r) {
                    Ok(a) => Some(a),
                    Err(e) => return input_error(e.to_string()),
                },
                None => None,
            };
            let (alg, x) = match ws.load_complex(alg.as_ref(), &complex) {
                Ok(v) => v,
                Err(e) => return input_error(e.to_string()),
            };
            let result = match semidual {
                Some(spec) => {
                    let sd = match load_semidual(&mut ws, &alg, &spec, bound) {
                        Ok(s) => s,
                        Err(o) => return o,
                    };
                    minimize_via(sd.module(), &x)
                }
                None => minimize(&x),
            };
            match result {
                Ok(min) => {
                    let t = min.complex.trimmed();
                    ok(
                        format!(
                            "minimal complex: support {:?}, dims {:?}, minimal: {}",
                            t.support(),
                            t.dims(),
                            t.is_minimal()
                        ),
                        json!({
                            "minimal": complex_to_file(&min.complex, None),
                            "certificate": min.certificate,
                        }),
                    )
                }
                Err(e) => input_error(e.to_string()),
            }
        }
        Cmd::Width { complex, ring, semidual, bound } => {
            let alg = match ring {
                Some(r) => match ws.load_ring(&r) {
                    Ok(a) => Some(a),
                    Err(e) => return input_error(e.to_string()),
                },
                None => None,
            };
            let (alg, x) = match ws.load_complex(alg.as_ref(), &complex) {
                Ok(v) => v,
                Err(e) => return input_error(e.to_string()),
            };
            let sd = match load_semidual(&mut ws, &alg, &semidual, bound) {
                Ok(s) => s,
                Err(o) => return o,
            };
            let certified = match CPerfectComplex::certify(x, &sd, seed) {
                Ok(c) => c,
                Err(e) => return perfect_error(e),
            };
            match width(&certified, &sd) {
                Ok(rep) => ok(
                    format!(
                        "width = {}, minimal representative ranks {:?}",
                        rep.summary.width, rep.summary.minimal_ranks
                    ),
                    json!({
                        "seed": seed,
                        "width": rep.summary,
                        "minimal": complex_to_file(&rep.minimal.complex, None),
                        "certificate": rep.certificate,
                    }),
                ),
                Err(e) => perfect_error(e),
            }
        }
        Cmd::FindEzd { ring, module } => {
            let alg = match ws.load_ring(&ring) {
                Ok(a) => a,
                Err(e) => return input_error(e.to_string()),
            };
            let (_, cm) = match ws.load_module(Some(&alg), &module) {
                Ok(x) => x,
                Err(e) => return input_error(e.to_string()),
            };
            match find_exact_zero_divisors(&alg, &cm) {
                Ok(pairs) => {
                    let shown: Vec<Value> = pairs
                        .iter()
                        .map(|p| {
                            json!({
                                "x": alg.format_element(&p.x),
                                "y": alg.format_element(&p.y),
                                "x_coords": p.x.coords(),
                                "y_coords": p.y.coords(),
                            })
                        })
                        .collect();
                    let text = if pairs.is_empty() {
                        "no exact zero-divisor pairs".to_string()
                    } else {
                        pairs
                            .iter()
                            .map(|p| {
                                format!(
                                    "({}, {})",
                                    alg.format_element(&p.x),
                                    alg.format_element(&p.y)
                                )
                            })
                            .collect::<Vec<_>>()
                            .join("\n")
                    };
                    ok(text, json!({"pairs": shown}))
                }
                Err(e) => perfect_error(e),
            }
        }
        Cmd::Ex3 { ring, semidual, pair, n, bound } => {
            let alg = match ws.load_ring(&ring) {
                Ok(a) => a,
                Err(e) => return input_error(e.to_string()),
            };
            let sd = match load_semidual(&mut ws, &alg, &semidual, bound) {
                Ok(s) => s,
                Err(o) => return o,
            };
            let ezd = match parse_pair(&alg, sd.module(), &pair) {
                Ok(p) => p,
                Err(o) => return o,
            };
            match ex3_verify(&sd, &ezd, n) {
                Ok(report) => {
                    let j = json!({"seed": seed, "report": report});
                    let text = format!(
                        "T minimal: {}, T+ exact below truncation: {}, Hom(C,T+) iso F+: {}, \
                         L minimal: {}, +L exact: {}, Hom(+L,C) iso F+: {}, widths: {:?}, \
                         P_C-pd(C/xC) infinite: {}, pd(R/xR) infinite: {}\nall assertions pass: {}",
                        report.t_minimal,
                        report.t_plus_exact_below_truncation,
                        report.hom_c_tplus_iso_to_free_periodic,
                        report.l_minimal,
                        report.l_plus_exact,
                        report.hom_lplus_c_iso_to_free_periodic,
                        report.widths,
                        report.pc_pd_quotient_infinite,
                        report.pd_ring_quotient_infinite,
                        report.all_pass
                    );
                    if report.all_pass {
                        ok(text, j)
                    } else {
                        refuted(text, j)
                    }
                }
                Err(e) => perfect_error(e),
            }
        }
        Cmd::HereditaryProbe { ring, semidual, rank, bound } => {
            let alg = match ws.load_ring(&ring) {
                Ok(a) => a,
                Err(e) => return input_error(e.to_string()),
            };
            let sd = match load_semidual(&mut ws, &alg, &semidual, bound) {
                Ok(s) => s,
                Err(o) => return o,
            };
            match hereditary_probe(&sd, rank, seed) {
                Ok(rep) => {
                    let j = json!({"seed": seed, "report": rep});
                    match &rep.verdict {
                        HereditaryVerdict::Evidence { submodules_checked } => ok(
                            format!(
                                "Hereditary-evidence: all {submodules_checked} submodules of C⊗R^{rank} are C-projective (evidence, not proof)"
                            ),
                            j,
                        ),
                        HereditaryVerdict::Refuted { witness_dim, .. } => refuted(
                            format!(
                                "Refuted: a {witness_dim}-dimensional submodule of C⊗R^{rank} is not C-projective"
                            ),
                            j,
                        ),
                    }
                }
                Err(cproj_core::cproj::CprojError::Module(ModuleError::CapExceeded {
                    count,
                    cap,
                })) => unknown(
                    format!("submodule enumeration exceeded cap: {count} > {cap}"),
                    json!({"unknown": "cap exceeded"}),
                ),
                Err(e) => input_error(e.to_string()),
            }
        }
        Cmd::Corpus { sub: CorpusCmd::List } => {
            let names = ws.corpus_names();
            if names.is_empty() {
                return input_error(format!(
                    "no corpus entries under {} (set {} to override)",
                    ws.corpus_dir().display(),
                    cproj_core::files::CORPUS_ENV
                ));
            }
            ok(
                names.join("\n"),
                json!({"corpus_dir": ws.corpus_dir().display().to_string(), "entries": names}),
            )
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    let out = run(cli);
    if json {
        println!("{}", serde_json::to_string_pretty(&out.json).unwrap());
    } else {
        println!("{}", out.text);
    }
    ExitCode::from(out.exit)
}
