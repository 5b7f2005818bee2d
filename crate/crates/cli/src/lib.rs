//! Command-line front end: batch queries against the logic workbench.
//!
//! Output contract: the first line is the verdict (`theorem` / `non-theorem`
//! / `valid` / `countermodel` / `holds` / `fails` / `unrefuted` / a formula),
//! followed by an optional witness dump. Exit codes: 0 for positive or
//! neutral verdicts, 1 for negative verdicts, 2 for usage or input errors,
//! 3 when a resource guard refuses the query.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand};
use serde_json::{json, Value};

use imlk_core::bimodal::{self, GlModel};
use imlk_core::fixpoint;
use imlk_core::heyting;
use imlk_core::kripke::{countermodel, FrameClass, IntFrame, Valuation};
use imlk_core::parser::{parse, parse_corpus, render};
use imlk_core::poset::{Poset, WorldMask};
use imlk_core::presheaf;
use imlk_core::syntax::{axiom, AxiomName};
use imlk_core::verdict::{Verdict, Witness};
use imlk_core::Error;

#[derive(Parser)]
#[command(
    name = "imlk",
    about = "Workbench for intuitionistic modal logics of well-founded structures",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a formula (or a corpus file) and print the canonical form.
    Parse {
        formula: Option<String>,
        /// Corpus file: one formula per line, `#` comments.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Print the canonical text of a formula or of a cataloged axiom.
    Render {
        formula: Option<String>,
        /// Catalog axiom name (cl, em, nrm, ..., slob, wlob, ...).
        #[arg(long)]
        axiom: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a closed formula on a frame at every world.
    Check {
        frame: PathBuf,
        formula: String,
        #[arg(long)]
        json: bool,
    },
    /// Frame validity: all up-set valuations, all worlds.
    Validity {
        frame: PathBuf,
        formula: String,
        #[arg(long)]
        json: bool,
    },
    /// Relational frame condition for a cataloged axiom.
    Condition {
        frame: PathBuf,
        axiom: String,
        #[arg(long)]
        json: bool,
    },
    /// Search frames of a class for a countermodel.
    Countermodel {
        formula: String,
        #[arg(long, default_value = "ALL")]
        logic: String,
        #[arg(long, default_value_t = 4)]
        max: usize,
        #[arg(long)]
        json: bool,
    },
    /// Compute a fixed point of a box-guarded formula.
    #[command(group(ArgGroup::new("method").args(["diag", "shortcut"])))]
    Fixpoint {
        formula: String,
        var: String,
        /// Diagonalization recursion (default).
        #[arg(long)]
        diag: bool,
        /// Top-substitution shortcut (strong-Löb logics).
        #[arg(long)]
        shortcut: bool,
        /// Also model-check the fixed-point equation up to this world count.
        #[arg(long)]
        verify: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Translate into the bimodal language or its provability-logic form.
    #[command(group(ArgGroup::new("target").required(true).args(["flat", "to_gl"])))]
    Translate {
        formula: String,
        /// Prefix every subformula with [i], box becomes [m].
        #[arg(long)]
        flat: bool,
        /// Rewrite [i]X to (box X & X): the classical provability-logic form.
        #[arg(long = "to-gl")]
        to_gl: bool,
        #[arg(long)]
        json: bool,
    },
    /// Decide classical provability-logic theoremhood.
    DecideGl {
        formula: String,
        #[arg(long)]
        json: bool,
    },
    /// Decide strong-Löb (co-derivative) theoremhood via the bimodal
    /// reduction.
    DecideKm {
        formula: String,
        #[arg(long)]
        json: bool,
    },
    /// Decide theoremhood for the linear extension.
    DecideKmLc {
        formula: String,
        #[arg(long)]
        json: bool,
    },
    /// Coderivative table, operator classification and scatteredness of the
    /// up-set algebra of a poset.
    Algebra {
        poset: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Presheaf checks: the strong-Löb law, fixed-point subobject
    /// maximality, or the iterative fixed point on a chain.
    #[command(group(ArgGroup::new("what").required(true).args(["strong_lob", "maxst", "banach"])))]
    Presheaf {
        /// Poset file (--strong-lob) or presheaf file (--maxst/--banach).
        file: PathBuf,
        #[arg(long = "strong-lob")]
        strong_lob: bool,
        /// Requires a `nat:` endomorphism in the presheaf file.
        #[arg(long)]
        maxst: bool,
        /// Requires a `nat:` endomorphism; the chain's iterative fixed point.
        #[arg(long)]
        banach: bool,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate the frames of a class on a fixed number of worlds.
    Enumerate {
        worlds: usize,
        #[arg(long, default_value = "ALL")]
        logic: String,
        #[arg(long)]
        json: bool,
    },
}

/// Runs the CLI against the given arguments, writing the report to `out`.
/// Returns the process exit code.
pub fn run<W: Write>(args: &[String], out: &mut W) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(out, "{e}");
            return 2;
        }
    };
    match dispatch(cli.cmd, out) {
        Ok(code) => code,
        Err(e) => {
            let code = if e.is_resource_limit() { 3 } else { 2 };
            let _ = writeln!(out, "error: {e}");
            code
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::BadFile {
        line: 0,
        message: format!("{}: {e}", path.display()),
    })
}

fn dispatch<W: Write>(cmd: Cmd, out: &mut W) -> Result<i32, Error> {
    match cmd {
        Cmd::Parse {
            formula,
            file,
            json,
        } => {
            let mut formulas = Vec::new();
            if let Some(text) = formula {
                formulas.push(parse(&text)?);
            }
            if let Some(path) = file {
                for (_, f) in parse_corpus(&read(&path)?)? {
                    formulas.push(f);
                }
            }
            if formulas.is_empty() {
                return Err(Error::BadFile {
                    line: 0,
                    message: "nothing to parse: give a formula or --file".into(),
                });
            }
            if json {
                let rendered: Vec<String> = formulas.iter().map(render).collect();
                emit(out, json!({ "verdict": rendered }));
            } else {
                for f in &formulas {
                    let _ = writeln!(out, "{}", render(f));
                }
            }
            Ok(0)
        }
        Cmd::Render {
            formula,
            axiom: axiom_name,
            json,
        } => {
            let f = match (formula, axiom_name) {
                (Some(text), None) => parse(&text)?,
                (None, Some(name)) => axiom(AxiomName::parse(&name)?),
                _ => {
                    return Err(Error::BadFile {
                        line: 0,
                        message: "give exactly one of a formula or --axiom".into(),
                    })
                }
            };
            if json {
                emit(out, json!({ "verdict": render(&f) }));
            } else {
                let _ = writeln!(out, "{}", render(&f));
            }
            Ok(0)
        }
        Cmd::Check {
            frame,
            formula,
            json,
        } => {
            let fr = IntFrame::parse(&read(&frame)?)?;
            let f = parse(&formula)?;
            if !f.free_vars().is_empty() {
                return Err(Error::UnboundVariable(
                    f.free_vars().iter().next().unwrap().clone(),
                ));
            }
            let truth = fr.eval(&Valuation::new(), &f)?;
            let full = fr.full();
            let failing: Vec<usize> =
                (0..fr.len()).filter(|w| truth & (1 << w) == 0).collect();
            if truth == full {
                if json {
                    emit(out, json!({ "verdict": "valid" }));
                } else {
                    let _ = writeln!(out, "valid");
                }
                Ok(0)
            } else {
                if json {
                    emit(
                        out,
                        json!({ "verdict": "countermodel", "witness": { "worlds": failing } }),
                    );
                } else {
                    let _ = writeln!(out, "countermodel");
                    let _ = writeln!(
                        out,
                        "fails at {}",
                        failing
                            .iter()
                            .map(|w| w.to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                    );
                }
                Ok(1)
            }
        }
        Cmd::Validity {
            frame,
            formula,
            json,
        } => {
            let fr = IntFrame::parse(&read(&frame)?)?;
            let f = parse(&formula)?;
            let verdict = fr.valid_on(&f)?;
            report_validity(out, &verdict, json, "valid")
        }
        Cmd::Condition { frame, axiom, json } => {
            let fr = IntFrame::parse(&read(&frame)?)?;
            let name = AxiomName::parse(&axiom)?;
            let holds = fr.frame_condition(name)?;
            let verdict = if holds { "holds" } else { "fails" };
            if json {
                emit(out, json!({ "verdict": verdict }));
            } else {
                let _ = writeln!(out, "{verdict}");
            }
            Ok(if holds { 0 } else { 1 })
        }
        Cmd::Countermodel {
            formula,
            logic,
            max,
            json,
        } => {
            let class = FrameClass::parse(&logic)?;
            let f = parse(&formula)?;
            let verdict = countermodel(&f, class, max)?;
            report_validity(out, &verdict, json, "valid")
        }
        Cmd::Fixpoint {
            formula,
            var,
            diag: _,
            shortcut,
            verify,
            json,
        } => {
            let f = parse(&formula)?;
            let result = if shortcut {
                fixpoint::sl_fixpoint(&f, &var)?
            } else {
                fixpoint::diag(&f, &var)
            };
            let class = if shortcut {
                FrameClass::Sl
            } else {
                FrameClass::Gl
            };
            let checked = match verify {
                Some(bound) => Some(fixpoint::verify_fixpoint(&f, &var, &result, class, bound)?),
                None => None,
            };
            let mut code = 0;
            if json {
                let mut record = json!({ "verdict": render(&result) });
                if let Some(v) = &checked {
                    attach_verdict_json(&mut record, v);
                    if v.refuted() {
                        code = 1;
                    }
                }
                emit(out, record);
            } else {
                let _ = writeln!(out, "{}", render(&result));
                if let Some(v) = &checked {
                    code = write_verify_lines(out, v);
                }
            }
            Ok(code)
        }
        Cmd::Translate {
            formula,
            flat,
            to_gl: _,
            json,
        } => {
            let f = parse(&formula)?;
            if !f.is_unimodal() {
                return Err(Error::MixedTags);
            }
            let result = if flat {
                bimodal::flat(&f)
            } else {
                bimodal::to_gl(&f)
            };
            if json {
                emit(out, json!({ "verdict": render(&result) }));
            } else {
                let _ = writeln!(out, "{}", render(&result));
            }
            Ok(0)
        }
        Cmd::DecideGl { formula, json } => {
            let f = parse(&formula)?;
            let verdict = bimodal::decide_gl(&f)?;
            report_decision(out, &verdict, json)
        }
        Cmd::DecideKm { formula, json } => {
            let f = parse(&formula)?;
            let verdict = bimodal::decide_km(&f)?;
            report_decision(out, &verdict, json)
        }
        Cmd::DecideKmLc { formula, json } => {
            let f = parse(&formula)?;
            let verdict = bimodal::decide_km_lc(&f)?;
            report_decision(out, &verdict, json)
        }
        Cmd::Algebra { poset, json } => {
            let p = Poset::parse(&read(&poset)?)?;
            let ha = heyting::from_poset(&p)?;
            let coderiv = ha.coderivative();
            let flags = ha.classify_operator(&coderiv);
            let scattered = ha.scattered();
            if json {
                let table: BTreeMap<String, String> = (0..ha.len())
                    .map(|h| (ha.label(h).to_string(), ha.label(coderiv.apply(h)).to_string()))
                    .collect();
                emit(
                    out,
                    json!({
                        "verdict": if scattered { "scattered" } else { "not-scattered" },
                        "elements": ha.len(),
                        "coderivative": table,
                        "flags": {
                            "operator": flags.operator,
                            "k4": flags.k4,
                            "gl": flags.gl,
                            "r": flags.r,
                            "mhc": flags.mhc,
                            "km": flags.km,
                        },
                    }),
                );
            } else {
                let _ = writeln!(
                    out,
                    "{}",
                    if scattered { "scattered" } else { "not-scattered" }
                );
                let _ = writeln!(out, "elements {}", ha.len());
                for h in 0..ha.len() {
                    let _ = writeln!(
                        out,
                        "coderiv {} = {}",
                        ha.label(h),
                        ha.label(coderiv.apply(h))
                    );
                }
                let _ = writeln!(
                    out,
                    "flags operator={} k4={} gl={} r={} mhc={} km={}",
                    flags.operator, flags.k4, flags.gl, flags.r, flags.mhc, flags.km
                );
            }
            Ok(if scattered { 0 } else { 1 })
        }
        Cmd::Presheaf {
            file,
            strong_lob,
            maxst,
            banach: _,
            json,
        } => {
            if strong_lob {
                let p = Poset::parse(&read(&file)?)?;
                let ok = presheaf::check_strong_lob(&p)?;
                let verdict = if ok { "valid" } else { "countermodel" };
                if json {
                    emit(out, json!({ "verdict": verdict }));
                } else {
                    let _ = writeln!(out, "{verdict}");
                }
                return Ok(if ok { 0 } else { 1 });
            }
            let dir = file.parent().map(Path::to_path_buf).unwrap_or_default();
            let text = read(&file)?;
            let (x, nat) = presheaf::parse_presheaf_file(&text, |rel| read(&dir.join(rel)))?;
            let f = nat.ok_or(Error::BadFile {
                line: 0,
                message: "presheaf file defines no `nat:` endomorphism".into(),
            })?;
            if maxst {
                let report = presheaf::check_maxst(&x, &f)?;
                let ok = report.subte && report.maxst;
                if json {
                    emit(
                        out,
                        json!({
                            "verdict": if ok { "holds" } else { "fails" },
                            "subte": report.subte,
                            "maxst": report.maxst,
                            "witness": report.witness.as_ref().map(|(stage, sub)| {
                                json!({ "stage": stage, "stages": sub.stages })
                            }),
                        }),
                    );
                } else {
                    let _ = writeln!(out, "{}", if ok { "holds" } else { "fails" });
                    let _ = writeln!(out, "subte {}", report.subte);
                    let _ = writeln!(out, "maxst {}", report.maxst);
                    if let Some((stage, sub)) = &report.witness {
                        let _ = writeln!(out, "witness stage {stage}");
                        for (w, mask) in sub.stages.iter().enumerate() {
                            let elems: Vec<String> = (0..x.size(w))
                                .filter(|e| mask & (1 << e) != 0)
                                .map(|e| x.label(w, e).to_string())
                                .collect();
                            let _ = writeln!(out, "witness {w}: {}", elems.join(" "));
                        }
                    }
                }
                Ok(if ok { 0 } else { 1 })
            } else {
                let c = presheaf::banach_fixpoint(&x, &f)?;
                if json {
                    let stages: Vec<String> = (0..x.poset().len())
                        .map(|w| x.label(w, c[w]).to_string())
                        .collect();
                    emit(out, json!({ "verdict": "fixpoint", "witness": stages }));
                } else {
                    let _ = writeln!(out, "fixpoint");
                    for w in 0..x.poset().len() {
                        let _ = writeln!(out, "stage {w}: {}", x.label(w, c[w]));
                    }
                }
                Ok(0)
            }
        }
        Cmd::Enumerate {
            worlds,
            logic,
            json,
        } => {
            let class = FrameClass::parse(&logic)?;
            let frames = imlk_core::kripke::enumerate_frames(worlds, class)?;
            if json {
                let list: Vec<Value> = frames.iter().map(frame_json).collect();
                emit(out, json!({ "verdict": "count", "count": frames.len(), "frames": list }));
            } else {
                let _ = writeln!(out, "count {}", frames.len());
                for f in &frames {
                    let _ = writeln!(out);
                    let _ = write!(out, "{}", f.to_file_format());
                }
            }
            Ok(0)
        }
    }
}

fn emit<W: Write>(out: &mut W, v: Value) {
    let _ = writeln!(out, "{v}");
}

fn mask_worlds(mask: WorldMask) -> Vec<usize> {
    (0..32).filter(|w| mask & (1 << w) != 0).collect()
}

fn frame_json(f: &IntFrame) -> Value {
    let n = f.len();
    let mut leq = Vec::new();
    let mut prec = Vec::new();
    for w in 0..n {
        for z in 0..n {
            if w != z && f.order().le(w, z) {
                leq.push(json!([w, z]));
            }
            if f.prec(w, z) {
                prec.push(json!([w, z]));
            }
        }
    }
    json!({ "worlds": n, "leq": leq, "prec": prec })
}

fn witness_json(w: &Witness) -> Value {
    match w {
        Witness::Kripke {
            frame,
            valuation,
            world,
        } => {
            let vals: BTreeMap<String, Vec<usize>> = valuation
                .iter()
                .map(|(k, m)| (k.clone(), mask_worlds(m)))
                .collect();
            json!({ "frame": frame_json(frame), "valuation": vals, "world": world })
        }
        Witness::Bimodal {
            frame,
            valuation,
            world,
        } => {
            let n = frame.len();
            let mut ri = Vec::new();
            let mut rm = Vec::new();
            for a in 0..n {
                for b in 0..n {
                    if frame.ri(a, b) {
                        ri.push(json!([a, b]));
                    }
                    if frame.rm(a, b) {
                        rm.push(json!([a, b]));
                    }
                }
            }
            let vals: BTreeMap<String, Vec<usize>> = valuation
                .iter()
                .map(|(k, m)| (k.clone(), mask_worlds(*m)))
                .collect();
            json!({ "frame": { "worlds": n, "ri": ri, "rm": rm }, "valuation": vals, "world": world })
        }
        Witness::Classical { model, world } => {
            json!({ "model": gl_model_json(model), "world": world })
        }
    }
}

fn gl_model_json(m: &GlModel) -> Value {
    let mut prec = Vec::new();
    for w in 0..m.n {
        for v in &m.rm[w] {
            prec.push(json!([w, v]));
        }
    }
    let vals: BTreeMap<String, Vec<usize>> = m
        .val
        .iter()
        .map(|(k, s)| (k.clone(), s.iter().copied().collect()))
        .collect();
    json!({ "worlds": m.n, "prec": prec, "valuation": vals })
}

fn write_witness<W: Write>(out: &mut W, w: &Witness) {
    match w {
        Witness::Kripke {
            frame,
            valuation,
            world,
        } => {
            let _ = write!(out, "{}", frame.to_file_format());
            let _ = write!(out, "{valuation}");
            let _ = writeln!(out, "world {world}");
        }
        Witness::Bimodal {
            frame,
            valuation,
            world,
        } => {
            let n = frame.len();
            let _ = writeln!(out, "worlds {n}");
            for a in 0..n {
                for b in 0..n {
                    if frame.ri(a, b) {
                        let _ = writeln!(out, "ri {a} {b}");
                    }
                }
            }
            for a in 0..n {
                for b in 0..n {
                    if frame.rm(a, b) {
                        let _ = writeln!(out, "rm {a} {b}");
                    }
                }
            }
            for (name, mask) in valuation {
                let worlds: Vec<String> =
                    mask_worlds(*mask).iter().map(|w| w.to_string()).collect();
                let _ = writeln!(out, "val {} = {{{}}}", name, worlds.join(","));
            }
            let _ = writeln!(out, "world {world}");
        }
        Witness::Classical { model, world } => {
            let _ = write!(out, "{}", model.to_file_format());
            let _ = writeln!(out, "world {world}");
        }
    }
}

fn attach_verdict_json(record: &mut Value, v: &Verdict) {
    if let Value::Object(map) = record {
        match v {
            Verdict::Holds => {
                map.insert("checked".into(), json!("valid"));
            }
            Verdict::Unrefuted { bound } => {
                map.insert("checked".into(), json!("unrefuted"));
                map.insert("bound".into(), json!(bound));
            }
            Verdict::Refuted(w) => {
                map.insert("checked".into(), json!("refuted"));
                map.insert("witness".into(), witness_json(w));
            }
        }
    }
}

fn write_verify_lines<W: Write>(out: &mut W, v: &Verdict) -> i32 {
    match v {
        Verdict::Holds => {
            let _ = writeln!(out, "valid");
            0
        }
        Verdict::Unrefuted { bound } => {
            let _ = writeln!(out, "unrefuted");
            let _ = writeln!(out, "bound {bound}");
            0
        }
        Verdict::Refuted(w) => {
            let _ = writeln!(out, "refuted");
            write_witness(out, w);
            1
        }
    }
}

/// Shared reporting for validity-style verdicts (`valid` / `countermodel` /
/// `unrefuted`).
fn report_validity<W: Write>(
    out: &mut W,
    v: &Verdict,
    json_mode: bool,
    positive: &str,
) -> Result<i32, Error> {
    Ok(match v {
        Verdict::Holds => {
            if json_mode {
                emit(out, json!({ "verdict": positive }));
            } else {
                let _ = writeln!(out, "{positive}");
            }
            0
        }
        Verdict::Unrefuted { bound } => {
            if json_mode {
                emit(out, json!({ "verdict": "unrefuted", "bound": bound }));
            } else {
                let _ = writeln!(out, "unrefuted");
                let _ = writeln!(out, "bound {bound}");
            }
            0
        }
        Verdict::Refuted(w) => {
            if json_mode {
                emit(out, json!({ "verdict": "countermodel", "witness": witness_json(w) }));
            } else {
                let _ = writeln!(out, "countermodel");
                write_witness(out, w);
            }
            1
        }
    })
}

fn report_decision<W: Write>(out: &mut W, v: &Verdict, json_mode: bool) -> Result<i32, Error> {
    Ok(match v {
        Verdict::Holds => {
            if json_mode {
                emit(out, json!({ "verdict": "theorem" }));
            } else {
                let _ = writeln!(out, "theorem");
            }
            0
        }
        Verdict::Refuted(w) => {
            if json_mode {
                emit(out, json!({ "verdict": "non-theorem", "witness": witness_json(w) }));
            } else {
                let _ = writeln!(out, "non-theorem");
                write_witness(out, w);
            }
            1
        }
        Verdict::Unrefuted { bound } => {
            if json_mode {
                emit(out, json!({ "verdict": "unrefuted", "bound": bound }));
            } else {
                let _ = writeln!(out, "unrefuted");
                let _ = writeln!(out, "bound {bound}");
            }
            0
        }
    })
}
