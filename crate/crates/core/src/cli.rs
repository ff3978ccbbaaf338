//! Command-line front end. Every command builds a [`Report`]; verdicts live
//! inside it and only tool failures turn into nonzero exit codes.

use std::collections::BTreeMap;
use std::path::{Path as FsPath, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C;
use num_rational::BigRational;
use serde_json::Value;

use crate::algebra::Element;
use crate::dimer::Document;
use crate::dimer::{isomorphic, perfect_matchings, zigzag_consistent, Consistency, Dimer, PotentialData};
use crate::error::{Error, Result};
use crate::families::commutative::{det_m0_identity, det_p_check};
use crate::families::dq::{dq_first_order_check, DqCheck, Family};
use crate::families::pillowcase::{
    open_mirror_check, pillowcase_series, q_coefficients, vertex_subalgebra_check, w0_centrality, OpenMirror,
    PillowcaseFamily,
};
use crate::families::sklyanin::{commutative_limit, SklyaninFamily};
use crate::families::{sample_points, FamilyPoint, DEFAULT_SEED};
use crate::groups::{formal_quotient, grading_congruence, DecoratedQuiver};
use crate::groups::GroupTable;
use crate::matfact::MfDocument;
use crate::matfact::{arc_mf, hom_differential, zeta_morphism, MfError};
use crate::potential::CyclicPotential;
use crate::quiver::Quiver;
use crate::reduction::{is_central, Centrality, CompletionOptions, ReductionSystem};
use crate::report::{complex, float, CheckRecord, Report, Verdict};
use crate::scalar::Scalar;

/// Finite-difference checks are compared at this tolerance, whatever `--tol` says.
pub const DQ_TOLERANCE: f64 = 1e-4;

#[derive(Parser, Debug, Clone)]
#[command(name = "ncmirror", version, about = "Quivers with potential, dimer duals and mirror family checks")]
pub struct Cli {
    #[command(flatten)]
    pub flags: Flags,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Flags {
    /// Word-length truncation for completions and centrality tests.
    #[arg(long, global = true, default_value_t = 12)]
    pub degree: usize,
    /// Series order (in the nome) for exact q-series.
    #[arg(long, global = true, default_value_t = 30)]
    pub qorder: i64,
    /// Numeric tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Seed for sampled parameter points.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Also write the report as JSON.
    #[arg(long, global = true, value_name = "FILE")]
    pub json: Option<PathBuf>,
    /// Record wall time per check (makes the report nondeterministic).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Constructions on a dimer file.
    Dimer {
        #[command(subcommand)]
        action: DimerAction,
    },
    /// Checks on the explicit mirror families.
    Family {
        #[arg(value_parser = ["333", "2222"])]
        family: String,
        check: FamilyCheck,
        #[command(flatten)]
        params: FamilyParams,
    },
    /// Formal dual group quotient of a quiver with relations.
    Quotient { quiver: PathBuf, group: PathBuf },
}

#[derive(Subcommand, Debug, Clone)]
pub enum DimerAction {
    /// Structural validation.
    Validate { file: PathBuf },
    /// Dual dimer and the involution self-test.
    Dual {
        file: PathBuf,
        /// Write the dual dimer here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Φ on the dual quiver, W, and the centrality of W.
    Potential { file: PathBuf },
    /// Perfect matchings.
    Matchings {
        file: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        cap: usize,
    },
    /// Zigzag consistency in the abelian cover.
    Consistency {
        file: PathBuf,
        #[arg(long, default_value_t = 20)]
        depth: usize,
    },
    /// Arc factorization of one arrow of the dual quiver.
    Mf {
        file: PathBuf,
        #[arg(long)]
        arrow: String,
    },
    /// The morphism ζ between two arc factorizations.
    Zeta {
        file: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, default_value_t = 0)]
        lift: usize,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyCheck {
    /// 333: a³+b³+c³ − σabc. 2222: ac+bd and the quadric.
    Hesse,
    /// Centrality of W (numeric for 333, exact series for 2222).
    Central,
    /// j-invariant of the open mirror map (2222 only).
    Openmirror,
    /// Summed coefficients against their closed forms.
    Abcd,
    /// First-order deformation ratios at the commutative point.
    Dq,
    /// Determinant identities of the linear matrices.
    Detm0,
}

#[derive(Args, Debug, Clone)]
pub struct FamilyParams {
    /// Holonomy parameter; fixes a single point together with --t.
    #[arg(long)]
    pub s: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub imtau: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub retau: f64,
    /// Orders of the j-expansion to compare.
    #[arg(long, default_value_t = 3)]
    pub order: usize,
    /// Finite-difference step.
    #[arg(long, default_value_t = 1e-4)]
    pub h: f64,
    /// Number of sampled points when --s and --t are absent.
    #[arg(long, default_value_t = 5)]
    pub points: usize,
}

/// Exit status for a failed command: 3 for resource caps, 2 for bad input.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Resource(_) => 3,
        _ => 2,
    }
}

/// Runs a parsed command line; `command` is the echo stored in the report.
pub fn run(cli: &Cli, command: Vec<String>) -> Result<Report> {
    let mut report = Report::new(command);
    let f = &cli.flags;
    match &cli.command {
        Command::Dimer { action } => cmd_dimer(action, f, &mut report)?,
        Command::Family { family, check, params } => cmd_family(Family::parse(family)?, *check, params, f, &mut report)?,
        Command::Quotient { quiver, group } => cmd_quotient(quiver, group, f, &mut report)?,
    }
    Ok(report)
}

/// Runs `body` and stamps the elapsed time on every record it returns.
fn timed(report: &mut Report, body: impl FnOnce() -> Result<Vec<CheckRecord>>) -> Result<()> {
    let start = Instant::now();
    let recs = body()?;
    let secs = start.elapsed().as_secs_f64();
    for mut r in recs {
        r.wall_seconds = Some(secs);
        report.push(r);
    }
    Ok(())
}

fn text(s: impl Into<String>) -> Value {
    Value::String(s.into())
}

fn file_input(path: &FsPath) -> Value {
    text(path.display().to_string())
}

fn read(path: &FsPath) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &FsPath, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::Usage(format!("cannot write {}: {e}", path.display())))
}

/// Completion that refuses to continue with a capped rule set.
fn strict_system<S: Scalar>(q: &Quiver, rels: &[Element<S>], bound: usize, tol: f64) -> Result<ReductionSystem<S>> {
    ReductionSystem::build_strict(q, rels, CompletionOptions::new(bound).tol(tol))
}

fn centrality_record<S: Scalar>(name: &str, c: &Centrality<S>, q: &Quiver, degree: usize) -> CheckRecord {
    let verdict = match c {
        Centrality::CentralUpTo(_) => Verdict::Pass,
        _ => Verdict::Fail,
    };
    let mut r = CheckRecord::new(name, verdict).bound("degree", degree as i64).value("label", text(c.label()));
    match c {
        Centrality::NotCentral { arrow, residue } => {
            r = r.witness(format!("[W, {}] = {}", q.arrow_name(*arrow), residue.display(q)))
        }
        Centrality::Inconclusive(why) => r = r.witness(why.clone()),
        Centrality::CentralUpTo(_) => {}
    }
    r
}

// ---------------------------------------------------------------- dimer

fn dimer_file(action: &DimerAction) -> &PathBuf {
    match action {
        DimerAction::Validate { file }
        | DimerAction::Dual { file, .. }
        | DimerAction::Potential { file }
        | DimerAction::Matchings { file, .. }
        | DimerAction::Consistency { file, .. }
        | DimerAction::Mf { file, .. }
        | DimerAction::Zeta { file, .. } => file,
    }
}

pub fn cmd_dimer(action: &DimerAction, f: &Flags, report: &mut Report) -> Result<()> {
    let path = dimer_file(action);
    let d = Dimer::load(&read(path)?)?;
    if let DimerAction::Validate { .. } = action {
        let violations = d.validate();
        let mut r = CheckRecord::new("validate", Verdict::from_bool(violations.is_empty())).input("file", file_input(path));
        if !violations.is_empty() {
            r = r.witness(violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "));
        }
        r = r
            .value("vertices", d.quiver().vertex_count().into())
            .value("arrows", d.quiver().arrow_count().into())
            .value("faces", d.faces().len().into())
            .value("euler", d.euler_characteristic().into());
        report.push(r);
        return Ok(());
    }
    // Everything else needs a well-formed dimer; violations are reported, not fatal.
    let violations = d.validate();
    if !violations.is_empty() {
        let w = violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ");
        report.push(CheckRecord::new("validate", Verdict::Fail).input("file", file_input(path)).witness(w));
        return Ok(());
    }
    match action {
        DimerAction::Validate { .. } => unreachable!(),
        DimerAction::Dual { out, .. } => {
            let dual = d.dual()?;
            let saved = dual.save();
            timed(report, || {
                let back = dual.dual()?;
                let iso = isomorphic(&back, &d);
                let mut r = CheckRecord::new("involution", Verdict::from_bool(iso.is_some())).input("file", file_input(path));
                if let Some(m) = iso {
                    let pairs: Vec<String> = m.iter().map(|(a, b)| format!("{a}->{b}")).collect();
                    r = r.value("vertex_map", text(pairs.join(" ")));
                }
                let reparsed = Dimer::load(&saved)?;
                let round = CheckRecord::new("dual-round-trip", Verdict::from_bool(reparsed.save() == saved));
                Ok(vec![r, round])
            })?;
            report.output("dual", text(saved.clone()));
            report.output("dual_genus", dual.genus().map_or(Value::Null, |g| g.into()));
            if let Some(o) = out {
                write(o, &saved)?;
            }
        }
        DimerAction::Potential { .. } => {
            let data = d.potentials::<BigRational>(None, f.degree)?;
            let q = data.dual.quiver().clone();
            report.output("phi", text(data.phi.display(&q)));
            report.output("face_words", text(d.face_word_display()));
            report.output("w", text(data.w_display()));
            let rels = data.phi.jacobian_relations(&q, f.degree)?;
            let listed: Vec<Value> = q
                .arrow_ids()
                .zip(&rels)
                .map(|(e, r)| text(format!("d/d{} = {}", q.arrow_name(e), r.display(&q))))
                .collect();
            report.output("relations", Value::Array(listed));
            timed(report, || {
                let sys = strict_system(&q, &rels, f.degree, 0.0)?;
                let c = is_central(&q, &data.w, &sys, f.degree)?;
                Ok(vec![centrality_record("w-central", &c, &q, f.degree)
                    .input("file", file_input(path))
                    .value("rules", sys.rule_count().into())])
            })?;
        }
        DimerAction::Matchings { cap, .. } => {
            let m = perfect_matchings(&d, *cap)?;
            let q = d.quiver();
            let list: Vec<Value> = m
                .matchings
                .iter()
                .map(|s| text(s.iter().map(|&a| q.arrow_name(a)).collect::<Vec<_>>().join(" ")))
                .collect();
            report.push(
                CheckRecord::new("matchings", Verdict::Info)
                    .input("file", file_input(path))
                    .bound("cap", *cap as i64)
                    .value("count", m.matchings.len().into())
                    .value("complete", m.complete.into()),
            );
            report.output("matchings", Value::Array(list));
            if !m.complete {
                return Err(Error::Resource(format!("matching enumeration stopped at the cap {cap}")));
            }
        }
        DimerAction::Consistency { depth, .. } => timed(report, || {
            let c = zigzag_consistent(&d, *depth)?;
            let q = d.quiver();
            let verdict = match c {
                Consistency::ConsistentUpTo(_) => Verdict::Pass,
                Consistency::Inconsistent { .. } => Verdict::Fail,
                Consistency::Inconclusive { .. } => Verdict::Info,
            };
            let mut r = CheckRecord::new("zigzag-consistency", verdict)
                .input("file", file_input(path))
                .bound("depth", *depth as i64)
                .value("label", text(c.label()));
            match &c {
                Consistency::Inconsistent { arrow, meet, zig_steps, zag_steps } => {
                    r = r.witness(format!(
                        "zig and zag rays of {} meet at {} after {zig_steps} and {zag_steps} steps",
                        q.arrow_name(*arrow),
                        q.arrow_name(*meet)
                    ))
                }
                Consistency::Inconclusive { arrow, meet, reason } => {
                    r = r.witness(format!("{} meets {}: {reason}", q.arrow_name(*arrow), q.arrow_name(*meet)))
                }
                Consistency::ConsistentUpTo(_) => {}
            }
            Ok(vec![r])
        })?,
        DimerAction::Mf { arrow, .. } => {
            let (data, sys) = potential_system(&d, f.degree)?;
            let q = data.dual.quiver().clone();
            let e = q.arrow_id(arrow)?;
            let rec = CheckRecord::new("delta-squared", Verdict::Pass)
                .input("file", file_input(path))
                .input("arrow", text(arrow.clone()))
                .bound("degree", f.degree as i64);
            match arc_mf(&data, sys, e) {
                Ok(mf) => {
                    report.output("factorization", text(MfDocument::from_mf(&q, &mf).save()));
                    report.push(rec);
                }
                Err(MfError::NotSquareZero(w)) => {
                    report.push(CheckRecord { verdict: Verdict::Fail, ..rec }.witness(w.to_string()));
                }
                Err(MfError::Input(err)) => return Err(err),
            }
        }
        DimerAction::Zeta { from, to, lift, .. } => {
            let (data, sys) = potential_system(&d, f.degree)?;
            let q = data.dual.quiver().clone();
            let (a, b) = (q.arrow_id(from)?, q.arrow_id(to)?);
            let pa = arc_mf(&data, sys.clone(), a).map_err(Error::from)?;
            let pb = arc_mf(&data, sys, b).map_err(Error::from)?;
            timed(report, || {
                let (z, info) = zeta_morphism(&data.dual, &pa, &pb, a, b, *lift)?;
                let dz = hom_differential(&z, &pa, &pb);
                let mut r = CheckRecord::new("zeta-cocycle", Verdict::from_bool(dz.is_zero()))
                    .input("file", file_input(path))
                    .input("from", text(from.clone()))
                    .input("to", text(to.clone()))
                    .input("lift", (*lift).into())
                    .bound("degree", f.degree as i64)
                    .value("k", info.k.into())
                    .value("ray", text(if info.zig { "zig" } else { "zag" }))
                    .value("morphism", text(z.display(&q)));
                if !dz.is_zero() {
                    r = r.witness(dz.display(&q));
                }
                Ok(vec![r])
            })?;
        }
    }
    Ok(())
}

fn potential_system(d: &Dimer, degree: usize) -> Result<(PotentialData<BigRational>, Arc<ReductionSystem<BigRational>>)> {
    let data = d.potentials::<BigRational>(None, degree)?;
    let rels = data.phi.jacobian_relations(data.dual.quiver(), degree)?;
    let sys = strict_system(data.dual.quiver(), &rels, degree, 0.0)?;
    Ok((data, Arc::new(sys)))
}

// ---------------------------------------------------------------- family

fn tau_of(p: &FamilyParams) -> C {
    C::new(p.retau, p.imtau)
}

/// The single point given by `--s/--t`, or `n` seeded samples. `s_default`
/// replaces the sampled holonomy when only `--t` is missing.
fn points(p: &FamilyParams, f: &Flags, n: usize, fixed_s: Option<f64>) -> Result<Vec<FamilyPoint>> {
    let tau = tau_of(p);
    if p.s.is_some() || p.t.is_some() {
        return Ok(vec![FamilyPoint::new(p.s.unwrap_or(0.0), p.t.unwrap_or(0.0), tau)?]);
    }
    if n == 0 {
        return Err(Error::Usage("--points must be positive".into()));
    }
    crate::families::check_tau(tau)?;
    let mut pts = sample_points(f.seed, n, tau);
    if let Some(s) = fixed_s {
        for pt in &mut pts {
            pt.s = s;
        }
    }
    Ok(pts)
}

fn point_inputs(r: CheckRecord, pt: &FamilyPoint) -> CheckRecord {
    r.input("s", float(pt.s)).input("t", float(pt.t)).input("tau", complex(pt.tau))
}

fn info(name: &str, residual: f64) -> CheckRecord {
    let mut r = CheckRecord::new(name, Verdict::Info);
    r.residual = Some(residual);
    r
}

pub fn cmd_family(family: Family, check: FamilyCheck, p: &FamilyParams, f: &Flags, report: &mut Report) -> Result<()> {
    match (family, check) {
        (Family::Sklyanin, FamilyCheck::Hesse) => {
            for (i, pt) in points(p, f, p.points, None)?.into_iter().enumerate() {
                timed(report, || {
                    let fam = SklyaninFamily::new(pt, None)?;
                    let h = fam.hesse()?;
                    let lit = point_inputs(CheckRecord::toleranced(format!("hesse[{i}]"), h.minus_sigma, f.tol), &pt)
                        .value("sigma", complex(h.sigma))
                        .value("ratio", complex(h.ratio))
                        .value("truncation_bound", float(fam.error_bound));
                    let alt = point_inputs(info(&format!("hesse-plus-sigma[{i}]"), h.plus_sigma), &pt);
                    Ok(vec![lit, alt])
                })?;
            }
            timed(report, || {
                let lim = commutative_limit(tau_of(p), None)?;
                let lit = CheckRecord::toleranced("commutative-limit", lim.residual_minus_sigma, f.tol)
                    .input("tau", complex(tau_of(p)))
                    .value("xyz_ratio", complex(lim.xyz_ratio))
                    .value("sigma", complex(lim.sigma))
                    .value("stray", float(lim.stray));
                Ok(vec![lit, info("commutative-limit-plus-sigma", lim.residual_plus_sigma)])
            })?;
        }
        (Family::Pillowcase, FamilyCheck::Hesse) => {
            for (i, pt) in points(p, f, p.points, Some(0.0))?.into_iter().enumerate() {
                timed(report, || {
                    let fam = PillowcaseFamily::new(pt)?;
                    let (raw, theta) = fam.ac_plus_bd();
                    let stated = fam.psi / fam.phi;
                    Ok(vec![
                        point_inputs(CheckRecord::toleranced(format!("ac+bd[{i}]"), raw, f.tol), &pt),
                        point_inputs(CheckRecord::toleranced(format!("ac+bd-theta[{i}]"), theta, f.tol), &pt),
                        point_inputs(CheckRecord::toleranced(format!("quadric[{i}]"), fam.quadric(stated), f.tol), &pt)
                            .value("ratio", complex(stated)),
                        point_inputs(info(&format!("quadric-inverse[{i}]"), fam.quadric(fam.phi / fam.psi)), &pt),
                    ])
                })?;
            }
        }
        (Family::Sklyanin, FamilyCheck::Central) => {
            let n = if p.s.is_some() || p.t.is_some() { 1 } else { p.points.min(3) };
            let q = crate::families::sklyanin::sklyanin_quiver();
            for (i, pt) in points(p, f, n, None)?.into_iter().enumerate() {
                timed(report, || {
                    let c = SklyaninFamily::new(pt, None)?.centrality(f.degree, f.tol)?;
                    let r = centrality_record(&format!("w-central[{i}]"), &c, &q, f.degree);
                    Ok(vec![point_inputs(r, &pt).input("tol", float(f.tol))])
                })?;
            }
        }
        (Family::Pillowcase, FamilyCheck::Central) => {
            let q = crate::families::pillowcase::conifold_quiver();
            timed(report, || {
                let c = w0_centrality(f.degree, f.qorder)?;
                Ok(vec![centrality_record("w0-central", &c, &q, f.degree).bound("qorder", f.qorder)])
            })?;
            timed(report, || {
                let v = vertex_subalgebra_check(f.degree)?;
                Ok(vec![CheckRecord::new("vertex-loops-commute", Verdict::from_bool(v.holds())).bound("degree", f.degree as i64)])
            })?;
        }
        (Family::Sklyanin, FamilyCheck::Openmirror) => {
            return Err(Error::Usage("openmirror is defined for the 2222 family".into()))
        }
        (Family::Pillowcase, FamilyCheck::Openmirror) => {
            timed(report, || openmirror_records(p.order, f.qorder))?;
            let (phi, psi) = pillowcase_series(f.qorder);
            report.output("phi", text(phi.to_string()));
            report.output("psi", text(psi.to_string()));
        }
        (Family::Sklyanin, FamilyCheck::Abcd) => {
            for (i, pt) in points(p, f, p.points, None)?.into_iter().enumerate() {
                timed(report, || {
                    let fam = SklyaninFamily::new(pt, None)?;
                    let raw = fam.raw_normalized(None);
                    let gap = raw.iter().zip(&fam.abc).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
                    Ok(vec![point_inputs(CheckRecord::toleranced(format!("sums-vs-theta[{i}]"), gap, f.tol), &pt)])
                })?;
            }
        }
        (Family::Pillowcase, FamilyCheck::Abcd) => {
            for (i, pt) in points(p, f, p.points, Some(0.0))?.into_iter().enumerate() {
                timed(report, || {
                    let fam = PillowcaseFamily::new(pt)?;
                    let phases = fam.theta_phases();
                    let mut r = point_inputs(
                        CheckRecord::toleranced(format!("sums-vs-theta[{i}]"), fam.theta_discrepancy(), f.tol),
                        &pt,
                    );
                    for (name, z) in ["a", "b", "c", "d"].iter().zip(phases) {
                        r = r.value(&format!("phase_{name}"), complex(z));
                    }
                    Ok(vec![r.value("k", complex(fam.k))])
                })?;
            }
        }
        (fam, FamilyCheck::Dq) => timed(report, || {
            let c = dq_first_order_check(fam, tau_of(p), p.h)?;
            Ok(dq_records(&c))
        })?,
        (Family::Sklyanin, FamilyCheck::Detm0) => timed(report, || {
            let id = det_m0_identity();
            Ok(vec![CheckRecord::new("det-m0", Verdict::from_bool(id.holds()))
                .value("determinant", text(id.determinant.display()))
                .value("k", text(id.k.display()))])
        })?,
        (Family::Pillowcase, FamilyCheck::Detm0) => timed(report, || {
            let c = det_p_check();
            Ok(vec![
                CheckRecord::new("det-p", Verdict::from_bool(c.reduced_difference.is_zero()))
                    .value("determinant", text(c.determinant.display()))
                    .value("stated", text(c.stated.display())),
                CheckRecord::new("det-p-literal-difference", Verdict::Info)
                    .value("difference", text(c.literal_difference.display())),
            ])
        })?,
    }
    Ok(())
}

fn openmirror_records(orders: usize, qorder: i64) -> Result<Vec<CheckRecord>> {
    let m: OpenMirror = open_mirror_check(orders)?;
    let coeffs = |s: &crate::qseries::QSeries| -> Value {
        Value::Array(q_coefficients(s, orders + 1).iter().map(|c| text(c.to_string())).collect())
    };
    let (phi, psi) = pillowcase_series(qorder);
    let first = |s: &crate::qseries::QSeries| -> Value {
        Value::Array(s.terms().take(4).map(|(e, c)| text(format!("{c}*q_d^{e}"))).collect())
    };
    Ok(vec![
        CheckRecord::new("series", Verdict::Info).bound("qorder", qorder).value("phi", first(&phi)).value("psi", first(&psi)),
        CheckRecord::new("j-psi-over-phi-vs-eta", Verdict::from_bool(m.literal_matches_eta()))
            .bound("orders", orders as i64)
            .value("coefficients", coeffs(&m.j_psi_over_phi)),
        CheckRecord::new(
            "j-psi-over-phi-constants",
            Verdict::from_bool(OpenMirror::matches_constants(&m.j_psi_over_phi, orders)),
        )
        .bound("orders", orders as i64),
        CheckRecord::new("j-phi-over-psi-vs-eta", Verdict::Info)
            .value("matches", m.inverse_matches_eta().into())
            .value("constants_match", OpenMirror::matches_constants(&m.j_phi_over_psi, orders).into())
            .value("coefficients", coeffs(&m.j_phi_over_psi)),
        CheckRecord::new("j-eta", Verdict::Info).value("coefficients", coeffs(&m.j_eta)),
        CheckRecord::new("j-symmetry", Verdict::from_bool(m.symmetric)),
    ])
}

fn dq_records(c: &DqCheck) -> Vec<CheckRecord> {
    let d = &c.derivatives;
    let tag = c.family.label();
    let inputs = |r: CheckRecord| r.input("tau", complex(c.tau)).input("h", float(d.h)).input("family", text(tag));
    let mut out = vec![
        inputs(CheckRecord::toleranced("dq-ratio", c.residual(), DQ_TOLERANCE))
            .value("ratio", complex(c.ratio))
            .value("expected", complex(c.expected)),
        inputs(info("dq-ratio-alternative", c.alternative_residual())).value("alternative", complex(c.alternative)),
    ];
    if let Some(r) = c.cd_residual() {
        out.push(inputs(CheckRecord::toleranced("dq-c-equals-d", r, DQ_TOLERANCE)));
    }
    out.push(
        inputs(CheckRecord::new("dq-richardson", Verdict::from_bool(d.gain() >= 4.0)))
            .value("residual_h", float(d.residual_h()))
            .value("residual_half", float(d.residual_half()))
            .value("residual_richardson", float(d.residual_richardson())),
    );
    out
}

// ---------------------------------------------------------------- quotient

/// Relations and `W` of a quiver document: the Jacobian of the `potential`
/// section (or of the signed face words) and the sum of the `worldsheet` lines.
pub fn quiver_with_potential(doc: &Document, bound: usize) -> Result<(Vec<Element<BigRational>>, Element<BigRational>)> {
    let q = &doc.quiver;
    let phi = if !doc.potential.is_empty() {
        let mut phi = CyclicPotential::new();
        for line in &doc.potential {
            phi = phi.add(&CyclicPotential::parse(q, line)?);
        }
        phi
    } else if !doc.faces.is_empty() {
        Dimer::new(q.clone(), doc.faces.clone(), doc.genus).face_word_potential()?
    } else {
        return Err(Error::Usage("the quiver file needs a potential or faces section".into()));
    };
    if doc.worldsheet.is_empty() {
        return Err(Error::Usage("the quiver file needs a worldsheet section for W".into()));
    }
    let mut w = Element::zero(bound);
    for line in &doc.worldsheet {
        w = w.add(&Element::parse(q, line, bound)?);
    }
    Ok((phi.jacobian_relations(q, bound)?, w))
}

pub fn cmd_quotient(quiver: &FsPath, group: &FsPath, f: &Flags, report: &mut Report) -> Result<()> {
    let doc = Document::parse(&read(quiver)?)?;
    let g = GroupTable::parse(&read(group)?)?;
    // Without an fmap every arrow is decorated by the identity.
    let dq = if doc.fmap.is_empty() {
        DecoratedQuiver::constant(doc.quiver.clone(), g.identity())
    } else {
        DecoratedQuiver::from_fmap(doc.quiver.clone(), &doc.fmap, &g)?
    };
    let (rels, w) = quiver_with_potential(&doc, f.degree)?;
    let inputs = |r: CheckRecord| r.input("quiver", file_input(quiver)).input("group", file_input(group));
    let fq = match formal_quotient(&dq, &g, &rels, &w) {
        Ok(fq) => fq,
        Err(Error::NotDualAction(msg)) => {
            report.push(inputs(CheckRecord::new("dual-action", Verdict::Fail)).witness(format!("NOT-A-DUAL-ACTION: {msg}")));
            return Ok(());
        }
        Err(e) => return Err(e),
    };
    let images: BTreeMap<String, Value> =
        fq.images.iter().enumerate().map(|(l, &h)| (format!("relation_{l}"), text(g.name(h)))).collect();
    report.push(inputs(CheckRecord::new("dual-action", Verdict::Pass)).value("images", Value::Object(images.into_iter().collect())));
    if g.alpha.is_some() {
        let bad = grading_congruence(&dq, &g)?;
        let mut r = CheckRecord::new("grading-congruence", Verdict::from_bool(bad.is_empty()));
        if !bad.is_empty() {
            r = r.witness(bad.join(" "));
        }
        report.push(r);
    }
    let sq = &fq.smash.quiver;
    let mut smash_doc = Document {
        quiver: sq.clone(),
        faces: Vec::new(),
        genus: None,
        minima: BTreeMap::new(),
        fmap: BTreeMap::new(),
        potential: Vec::new(),
        worldsheet: Vec::new(),
    };
    smash_doc.worldsheet.push(fq.w_hat.display(sq));
    report.output("smash_product", text(smash_doc.save()));
    report.output("lifted_relations", Value::Array(fq.relations.iter().map(|r| text(r.display(sq))).collect()));
    report.output("w_hat", text(fq.w_hat.display(sq)));
    timed(report, || {
        let sys = strict_system(sq, &fq.relations, f.degree, 0.0)?;
        let c = is_central(sq, &fq.w_hat, &sys, f.degree)?;
        Ok(vec![inputs(centrality_record("w-hat-central", &c, sq, f.degree))
            .value("vertices", sq.vertex_count().into())
            .value("arrows", sq.arrow_count().into())])
    })
}

/// Entry point shared by the binary: parses `args`, runs, prints, writes JSON.
/// Returns the process exit code.
pub fn main_with_args(args: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let echo = args.iter().skip(1).cloned().collect();
    match run(&cli, echo) {
        Ok(report) => {
            print!("{}", report.text());
            if let Some(path) = &cli.flags.json {
                if let Err(e) = write(path, &report.to_json_string(cli.flags.timing)) {
                    eprintln!("error: {e}");
                    return exit_code(&e);
                }
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
