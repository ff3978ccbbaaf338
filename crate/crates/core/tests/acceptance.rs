//! One PASS/FAIL line per acceptance criterion, at the stated tolerances.
//!
//! Criteria listed in `KNOWN_RED` fail under their literal reading; the lines
//! for those print the literal residual next to the alternative reading so the
//! discrepancy stays visible. The test asserts that every other criterion
//! passes and that the known-red ones have not silently turned green.

use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use num_complex::Complex64 as C;
use num_rational::BigRational;

use ncmirror::algebra::Element;
use ncmirror::cli::quiver_with_potential;
use ncmirror::dimer::{isomorphic, Dimer, Document, Triangulation};
use ncmirror::families::commutative::{det_m0_identity, det_p_check};
use ncmirror::families::dq::{dq_first_order_check, Family};
use ncmirror::families::pillowcase::{
    conifold_quiver, open_mirror_check, pillowcase_relations, pillowcase_series, OpenMirror, PillowcaseFamily,
};
use ncmirror::families::sklyanin::SklyaninFamily;
use ncmirror::families::{sample_points, DEFAULT_SEED};
use ncmirror::groups::{formal_quotient, DecoratedQuiver, GroupTable};
use ncmirror::matfact::{arc_family, hom_differential, zeta_morphism, GinzburgAlgebra};
use ncmirror::potential::CyclicPotential;
use ncmirror::reduction::{is_central, Centrality, CompletionOptions, ReductionSystem};
use ncmirror::scalar::rat;

type Q = BigRational;

const KNOWN_RED: [usize; 4] = [5, 7, 8, 12];

const DIMERS: [&str; 7] = ["conifold", "conifold_torus", "pentagon", "c3", "dp0", "orbifold_a1", "inconsistent"];

struct Outcome {
    id: usize,
    name: &'static str,
    pass: bool,
    detail: String,
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn read(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn dimer(name: &str) -> Dimer {
    Dimer::load(&read(&format!("{name}.dm"))).unwrap()
}

fn tau_i() -> C {
    C::new(0.0, 1.0)
}

fn conifold_mirror() -> Outcome {
    let start = Instant::now();
    let d = dimer("conifold");
    let data = d.potentials::<Q>(None, 8).unwrap();
    let q = data.dual.quiver();
    let phi_ok = data.phi == CyclicPotential::parse(q, "xyzw - wzyx").unwrap();
    // The four relations at the central fibre, parsed onto the dual quiver.
    let cq = conifold_quiver();
    let stated: Vec<Element<Q>> = pillowcase_relations(&cq, &[rat(1), rat(-1), rat(0), rat(0)], 8)
        .iter()
        .map(|r| Element::parse(q, &r.display(&cq), 8).unwrap())
        .collect();
    let rels = data.phi.jacobian_relations(q, 8).unwrap();
    let rels_ok = rels.len() == 4
        && stated.iter().all(|s| rels.iter().any(|r| r == s || *r == s.neg()))
        && rels.iter().all(|r| stated.iter().any(|s| r == s || *r == s.neg()));
    let w_ok = data.w == Element::parse(q, "xyzw + wzyx", 8).unwrap();
    let sys = ReductionSystem::build_strict(q, &rels, CompletionOptions::new(8)).unwrap();
    let c = is_central(q, &data.w, &sys, 8).unwrap();
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        id: 1,
        name: "conifold mirror",
        pass: phi_ok && rels_ok && w_ok && c == Centrality::CentralUpTo(8) && secs < 5.0,
        detail: format!(
            "phi={} relations={rels_ok} w={} {} ({secs:.2}s)",
            data.phi.display(q),
            data.w_display(),
            c.label()
        ),
    }
}

fn duality_involution() -> Outcome {
    let start = Instant::now();
    let mut ok = Vec::new();
    for name in DIMERS {
        let d = dimer(name);
        let back = d.dual().and_then(|x| x.dual()).unwrap();
        ok.push((name, isomorphic(&back, &d).is_some()));
    }
    let secs = start.elapsed().as_secs_f64();
    let genus_one = DIMERS.iter().filter(|n| dimer(n).genus() == Some(1)).count();
    let all = ok.iter().all(|(_, b)| *b);
    let listed: Vec<String> = ok.iter().map(|(n, b)| format!("{n}:{b}")).collect();
    Outcome {
        id: 2,
        name: "dual of dual is the identity",
        pass: all && ok.len() >= 4 && genus_one >= 2 && secs < 1.0,
        detail: format!("{} genus-1 fixtures={genus_one} ({secs:.3}s)", listed.join(" ")),
    }
}

fn pentagon_example() -> Outcome {
    let d = dimer("pentagon");
    let q = d.quiver();
    let face = d.face_word_potential::<Q>().unwrap();
    let face_ok = face == CyclicPotential::parse(q, "abecd - aedcb").unwrap();
    let data = d.potentials::<Q>(None, 10).unwrap();
    let dq = data.dual.quiver();
    let w_ok = data.w == Element::parse(dq, "cdeab + bcdea + deabc", 10).unwrap();
    let sys = data.reduction_system(CompletionOptions::new(10)).unwrap();
    let c = is_central(dq, &data.w, &sys, 10).unwrap();
    let self_dual = isomorphic(&data.dual, &d).is_some();
    Outcome {
        id: 3,
        name: "pentagon words",
        pass: face_ok && w_ok && c == Centrality::CentralUpTo(10),
        detail: format!(
            "face words: {} | W: {} | {} | phi on the dual: {} (dual isomorphic to original: {self_dual})",
            d.face_word_display(),
            data.w_display(),
            c.label(),
            data.phi.display(dq)
        ),
    }
}

/// Fixtures whose potential is homogeneous for some positive arrow grading.
/// `inconsistent` is not: its faces force `deg p + deg r = 0`, so truncating
/// by word length drops terms that would reduce to shorter words, and the
/// higher `ζ` only get a diagnostic line there.
fn graded(name: &str) -> bool {
    name != "inconsistent"
}

fn arc_factorizations() -> Outcome {
    let bound = 12;
    let (mut arrows, mut zetas, mut bad) = (0, 0, Vec::new());
    let mut ungraded = Vec::new();
    for name in DIMERS {
        let d = dimer(name);
        let data = d.potentials::<Q>(None, bound).unwrap();
        let dual = &data.dual;
        let sys = Arc::new(data.reduction_system(CompletionOptions::new(bound)).unwrap());
        // `arc_family` fails unless both compositions reduce to W·Id.
        let mfs = match arc_family(&data, sys) {
            Ok(m) => m,
            Err(e) => {
                bad.push(format!("{name}: {e}"));
                continue;
            }
        };
        arrows += mfs.len();
        for a in dual.quiver().arrow_ids() {
            let pa = &mfs[a as usize];
            let (id, _) = zeta_morphism(dual, pa, pa, a, a, 0).unwrap();
            if id != pa.identity() {
                bad.push(format!("{name}: zeta0 of {} is not the identity", dual.quiver().arrow_name(a)));
            }
            for b in dual.quiver().arrow_ids() {
                let pb = &mfs[b as usize];
                for lift in 0..=3 {
                    let Ok((z, _)) = zeta_morphism(dual, pa, pb, a, b, lift) else { continue };
                    let closed = hom_differential(&z, pa, pb).is_zero();
                    if !graded(name) {
                        ungraded.push(closed);
                        continue;
                    }
                    zetas += 1;
                    if !closed {
                        bad.push(format!("{name}: d zeta({a}->{b}, {lift}) != 0"));
                    }
                }
            }
        }
    }
    let open = ungraded.iter().filter(|c| !**c).count();
    Outcome {
        id: 4,
        name: "arc matrix factorizations",
        pass: bad.is_empty() && arrows > 0 && zetas > 0,
        detail: format!(
            "{arrows} factorizations, {zetas} zeta cocycles checked; failures: {bad:?}; \
             ungraded fixture at bound {bound}: {open} of {} zetas not closed",
            ungraded.len()
        ),
    }
}

fn hesse_identity() -> Outcome {
    let start = Instant::now();
    let pts = sample_points(DEFAULT_SEED, 5, tau_i());
    let (mut literal, mut alternative) = (0.0f64, 0.0f64);
    for pt in pts {
        let h = SklyaninFamily::new(pt, None).unwrap().hesse().unwrap();
        literal = literal.max(h.minus_sigma);
        alternative = alternative.max(h.plus_sigma);
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        id: 5,
        name: "cubic Hesse relation",
        pass: literal < 1e-9 && secs < 2.0,
        detail: format!("max |a^3+b^3+c^3 - sigma abc| = {literal:.3e}; with +sigma abc: {alternative:.3e} ({secs:.2}s)"),
    }
}

fn sklyanin_centrality() -> Outcome {
    let start = Instant::now();
    let mut labels = Vec::new();
    let mut all = true;
    for pt in sample_points(DEFAULT_SEED, 3, tau_i()) {
        let c = SklyaninFamily::new(pt, None).unwrap().centrality(7, 1e-8).unwrap();
        all &= c.is_central();
        labels.push(c.label());
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        id: 6,
        name: "cubic family W central",
        pass: all && secs < 60.0,
        detail: format!("{} ({secs:.2}s)", labels.join(", ")),
    }
}

/// `Σ m` over factorizations `n = m·m'` with `m ≡ m' ≡ 1` or `m ≡ m' ≡ 3 (mod 4)`.
fn phi_oracle(n: i64) -> i64 {
    (1..=n).filter(|m| n % m == 0 && m % 4 == (n / m) % 4 && m % 2 == 1).sum()
}

/// `Σ ((m−1)/4 + (m'−3)/4 + 1)` over `n = m·m'` with `m ≡ 1`, `m' ≡ 3 (mod 4)`.
fn psi_oracle(n: i64) -> i64 {
    (1..=n).filter(|m| n % m == 0 && m % 4 == 1 && (n / m) % 4 == 3).map(|m| (m - 1) / 4 + (n / m - 3) / 4 + 1).sum()
}

fn pillowcase_j() -> Outcome {
    let order = 40;
    let (phi, psi) = pillowcase_series(order);
    let series_ok = (1..order).all(|n| phi.coeff_int(n) == rat(phi_oracle(n)) && psi.coeff_int(n) == rat(psi_oracle(n)));
    let stated_phi = [(1, 1), (5, 6), (9, 3)];
    let stated_psi = [(3, 1), (7, 2)];
    let phi_mismatch: Vec<String> = stated_phi
        .iter()
        .filter(|(e, c)| phi.coeff_int(*e) != rat(*c))
        .map(|(e, c)| format!("q^{e}: stated {c}, got {}", phi.coeff_int(*e)))
        .collect();
    let psi_ok = stated_psi.iter().all(|(e, c)| psi.coeff_int(*e) == rat(*c));
    let m = open_mirror_check(3).unwrap();
    let constants = OpenMirror::matches_constants(&m.j_psi_over_phi, 3);
    let eta = m.literal_matches_eta();
    let inverse = (OpenMirror::matches_constants(&m.j_phi_over_psi, 3), m.inverse_matches_eta());
    Outcome {
        id: 7,
        name: "pillowcase series and j",
        pass: series_ok && phi_mismatch.is_empty() && psi_ok && constants && eta,
        detail: format!(
            "series vs divisor oracle={series_ok}; stated phi terms: {phi_mismatch:?}; psi={psi_ok}; \
             j(psi/phi) constants={constants} eta={eta}; j(phi/psi) constants={} eta={}",
            inverse.0, inverse.1
        ),
    }
}

fn theta_identities() -> Outcome {
    let tol = 1e-8;
    let (mut theta, mut acbd, mut quad, mut quad_inv) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut phases = String::new();
    for mut pt in sample_points(DEFAULT_SEED, 5, tau_i()) {
        pt.s = 0.0;
        let f = PillowcaseFamily::new(pt).unwrap();
        theta = theta.max(f.theta_discrepancy());
        let (raw, th) = f.ac_plus_bd();
        acbd = acbd.max(raw).max(th);
        quad = quad.max(f.quadric(f.psi / f.phi));
        quad_inv = quad_inv.max(f.quadric(f.phi / f.psi));
        phases = format!("{:?}", f.theta_phases().map(|z| (z.re.round(), z.im.round())));
    }
    Outcome {
        id: 8,
        name: "pillowcase theta identities",
        pass: theta < tol && acbd < tol && quad < tol,
        detail: format!(
            "sums vs theta {theta:.3e} (phases {phases}); ac+bd {acbd:.3e}; quadric with psi/phi {quad:.3e}, with phi/psi {quad_inv:.3e}"
        ),
    }
}

fn determinants() -> Outcome {
    let m0 = det_m0_identity();
    let p = det_p_check();
    Outcome {
        id: 9,
        name: "determinant identities",
        pass: m0.holds() && p.reduced_difference.is_zero(),
        detail: format!(
            "det M0 = {} | det P - stated = {} before using ag = bd, {} after",
            m0.determinant.display(),
            p.literal_difference.display(),
            p.reduced_difference.display()
        ),
    }
}

fn group_quotient() -> Outcome {
    let doc = Document::parse(&read("conifold_z2.qp")).unwrap();
    let g = GroupTable::parse(&read("z2.grp")).unwrap();
    let dq = DecoratedQuiver::from_fmap(doc.quiver.clone(), &doc.fmap, &g).unwrap();
    let (rels, w) = quiver_with_potential(&doc, 8).unwrap();
    let fq = formal_quotient(&dq, &g, &rels, &w).unwrap();
    let sq = &fq.smash.quiver;
    let mut missing = Vec::new();
    for i in 0..2 {
        let j = 1 - i;
        for e in [
            format!("w[{j}].z[{j}].y[{i}] - y[{j}].z[{j}].w[{i}]"),
            format!("z[{j}].y[{i}].x[{i}] - x[{j}].y[{i}].z[{i}]"),
            format!("x[{j}].w[{i}].z[{i}] - z[{j}].w[{i}].x[{i}]"),
            format!("y[{j}].x[{j}].w[{i}] - w[{j}].x[{j}].y[{i}]"),
        ] {
            let t = Element::<Q>::parse(sq, &e, 8).unwrap();
            if !fq.relations.iter().any(|r| *r == t || *r == t.neg()) {
                missing.push(e);
            }
        }
    }
    let c = fq.centrality(8, 0.0).unwrap();
    Outcome {
        id: 10,
        name: "Z2 quotient of the conifold",
        pass: missing.is_empty() && fq.relations.len() == 8 && c == Centrality::CentralUpTo(8),
        detail: format!("{} lifted relations, missing {missing:?}; W-hat {}", fq.relations.len(), c.label()),
    }
}

fn ginzburg() -> Outcome {
    let tq = Triangulation::parse(&read("tetrahedron.tri")).unwrap().build().unwrap();
    let q = &tq.quiver;
    // Φ = Σ T(f), assembled independently of the builder's own potential.
    let mut sum = CyclicPotential::<Q>::new();
    for t in &tq.triangle_cycles {
        sum.add_word(q, t, rat(1)).unwrap();
    }
    let built = tq.phi.map_coeffs(|s| s.coeff_int(0));
    let g = GinzburgAlgebra::new(q, &sum, 10).unwrap();
    let check = g.d_square_check(None, 0.0);
    let failing: Vec<&String> = check.failures.iter().map(|(n, _)| n).collect();
    Outcome {
        id: 11,
        name: "Ginzburg differential squares to zero",
        pass: built == sum && check.holds() && check.generators > 0,
        detail: format!(
            "{} generators up to degree {}, failures {failing:?}; builder potential matches the triangle sum: {}",
            check.generators,
            check.bound,
            built == sum
        ),
    }
}

fn first_order() -> Outcome {
    let tol = 1e-4;
    let a = dq_first_order_check(Family::Sklyanin, tau_i(), 1e-4).unwrap();
    let b = dq_first_order_check(Family::Pillowcase, tau_i(), 1e-4).unwrap();
    let cd = b.cd_residual().unwrap();
    let rich = a.derivatives.gain() >= 4.0 && b.derivatives.gain() >= 4.0;
    Outcome {
        id: 12,
        name: "first-order deformation ratios",
        pass: a.residual() < tol && b.residual() < tol && cd < tol && rich,
        detail: format!(
            "333: |ratio + sigma/3| = {:.3e} (vs +sigma/3: {:.3e}); 2222: |ratio - psi/(2phi)| = {:.3e} \
             (vs phi/(2psi): {:.3e}); c'=d' {cd:.3e}; Richardson gains {:.1}, {:.1}",
            a.residual(),
            a.alternative_residual(),
            b.residual(),
            b.alternative_residual(),
            a.derivatives.gain(),
            b.derivatives.gain()
        ),
    }
}

fn main() {
    let outcomes = vec![
        conifold_mirror(),
        duality_involution(),
        pentagon_example(),
        arc_factorizations(),
        hesse_identity(),
        sklyanin_centrality(),
        pillowcase_j(),
        theta_identities(),
        determinants(),
        group_quotient(),
        ginzburg(),
        first_order(),
    ];
    for o in &outcomes {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        let known = if KNOWN_RED.contains(&o.id) { " [known red]" } else { "" };
        println!("{tag} {:>2} {}{known}: {}", o.id, o.name, o.detail);
    }
    let unexpected: Vec<usize> =
        outcomes.iter().filter(|o| o.pass == KNOWN_RED.contains(&o.id)).map(|o| o.id).collect();
    if !unexpected.is_empty() {
        eprintln!("criteria with an unexpected verdict: {unexpected:?}");
        std::process::exit(1);
    }
}
