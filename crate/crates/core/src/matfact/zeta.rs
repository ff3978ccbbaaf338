//! Morphisms `ζ^{(i)}: P_a → P_b` between arc factorizations of arrows on a
//! common zigzag cycle of the algebra's quiver.

use std::sync::Arc;

use super::{zero_matrix, HomElement, MatrixFactorization};
use crate::algebra::Element;
use crate::dimer::{Dimer, Sign, State};
use crate::error::{Error, Result};
use crate::quiver::{ArrowId, Parity};
use crate::scalar::Scalar;

/// The walk behind a `ζ`: the ray used, its length `k` and the two opposite paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaData {
    /// True when `b` was reached along the zig ray of `a`, false for the zag ray.
    pub zig: bool,
    pub k: usize,
    pub walk: Vec<ArrowId>,
    pub opp1: Vec<ArrowId>,
    pub opp2: Vec<ArrowId>,
}

fn walk_to(d: &Dimer, a: ArrowId, b: ArrowId, lift: usize, zig: bool) -> Option<Vec<ArrowId>> {
    let period = 2 * d.quiver().arrow_count();
    let mut s = State { arrow: a, parity: 0 };
    let mut walk = vec![a];
    let mut seen = 0;
    for _ in 0..=(lift + 1) * period {
        if s.arrow == b {
            if seen == lift {
                return Some(walk);
            }
            seen += 1;
        }
        s = if zig { d.zig_step(s) } else { d.zag_step(s) };
        walk.push(s.arrow);
    }
    None
}

/// Walks from `a` to the `lift`-th copy of `b` met along the zig ray (or, when
/// `b` is not on it, the zag ray) and collects the complements of consecutive
/// pairs in alternating faces.
pub fn zeta_data(d: &Dimer, a: ArrowId, b: ArrowId, lift: usize) -> Result<ZetaData> {
    d.require_valid()?;
    let (zig, walk) = match walk_to(d, a, b, lift, true) {
        Some(w) => (true, w),
        None => match walk_to(d, a, b, lift, false) {
            Some(w) => (false, w),
            None => {
                let q = d.quiver();
                return Err(Error::Usage(format!(
                    "{} and {} lie on no common zigzag cycle",
                    q.arrow_name(a),
                    q.arrow_name(b)
                )));
            }
        },
    };
    let k = walk.len() - 1;
    let (mut opp1, mut opp2) = (Vec::new(), Vec::new());
    for j in 0..k {
        let even = j % 2 == 0;
        let sign = if even == zig { Sign::Plus } else { Sign::Minus };
        let face = d.face_from(walk[j + 1], sign);
        debug_assert_eq!(face[1], walk[j]);
        let rest = &face[2..];
        if even {
            opp1.extend_from_slice(rest);
        } else {
            opp2.extend_from_slice(rest);
        }
    }
    Ok(ZetaData { zig, k, walk, opp1, opp2 })
}

/// `ζ^{(lift)}` as a morphism between the arc factorizations `pa = P_a` and
/// `pb = P_b` built on the dimer `d`. The odd-`k` component through `opp₁`
/// carries the sign `−1`.
pub fn zeta_morphism<S: Scalar>(
    d: &Dimer,
    pa: &MatrixFactorization<S>,
    pb: &MatrixFactorization<S>,
    a: ArrowId,
    b: ArrowId,
    lift: usize,
) -> Result<(HomElement<S>, ZetaData)> {
    let z = zeta_data(d, a, b, lift)?;
    let q = d.quiver();
    let bound = pa.bound().min(pb.bound());
    if z.opp1.len().max(z.opp2.len()) > bound {
        return Err(Error::Usage(format!("ζ^({lift}) needs words longer than the bound {bound}")));
    }
    let opp1 = q.path_from_word(&z.opp1, Some(q.tail(a)))?;
    let opp2 = q.path_from_word(&z.opp2, Some(q.head(a)))?;
    let odd = z.k % 2 == 1;
    let s1 = if odd { S::one().negate() } else { S::one() };
    let mut entries = zero_matrix(2, 2, bound);
    let (r0, r1) = if odd { (1, 0) } else { (0, 1) };
    entries[r0][0] = Element::from_path(opp2, S::one(), bound);
    entries[r1][1] = Element::from_path(opp1, s1, bound);
    let f = HomElement { entries, parity: if odd { Parity::Odd } else { Parity::Even } };
    f.check(q, pa, pb)?;
    Ok((f, z))
}

/// Arc factorizations for every arrow, shared by the `ζ` helpers and tests.
pub fn arc_family<S: Scalar>(
    data: &crate::dimer::PotentialData<S>,
    sys: Arc<crate::reduction::ReductionSystem<S>>,
) -> Result<Vec<MatrixFactorization<S>>> {
    data.dual.quiver().arrow_ids().map(|e| super::arc_mf(data, sys.clone(), e).map_err(Error::from)).collect()
}

#[cfg(test)]
mod tests {
    use super::super::testing::*;
    use super::super::hom_differential;
    use super::*;
    use crate::dimer::fixtures::*;

    #[test]
    fn lift_zero_of_self_is_identity() {
        let (data, sys) = setup(&conifold_sphere(), 8);
        let mfs = arc_family(&data, sys).unwrap();
        for a in data.dual.quiver().arrow_ids() {
            let m = &mfs[a as usize];
            let (z, info) = zeta_morphism(&data.dual, m, m, a, a, 0).unwrap();
            assert_eq!(info.k, 0);
            assert_eq!(z, m.identity());
        }
    }

    #[test]
    fn conifold_x_to_y() {
        let (data, sys) = setup(&conifold_sphere(), 8);
        let d = &data.dual;
        let q = d.quiver();
        let mfs = arc_family(&data, sys).unwrap();
        let (x, y) = (q.arrow_id("x").unwrap(), q.arrow_id("y").unwrap());
        let (z, info) = zeta_morphism(d, &mfs[x as usize], &mfs[y as usize], x, y, 0).unwrap();
        assert_eq!(info.k, 1);
        assert_eq!(z.parity, Parity::Odd);
        assert!(hom_differential(&z, &mfs[x as usize], &mfs[y as usize]).is_zero());
    }

    #[test]
    fn zetas_are_cocycles_on_every_fixture() {
        let mut zag_walks = 0;
        for dimer in [pentagon(), conifold_sphere(), conifold_torus(), c3_torus()] {
            let (data, sys) = setup(&dimer, 12);
            let d = &data.dual;
            let mfs = arc_family(&data, sys).unwrap();
            let mut checked = [0, 0];
            for a in d.quiver().arrow_ids() {
                for b in d.quiver().arrow_ids() {
                    for i in 0..=3 {
                        let Ok((z, info)) = zeta_morphism(d, &mfs[a as usize], &mfs[b as usize], a, b, i) else {
                            continue;
                        };
                        let dz = hom_differential(&z, &mfs[a as usize], &mfs[b as usize]);
                        assert!(dz.is_zero(), "dζ ≠ 0 for {a}→{b} lift {i}");
                        checked[info.zig as usize] += 1;
                    }
                }
            }
            assert!(checked[1] > 0);
            zag_walks += checked[0];
        }
        assert!(zag_walks > 0);
    }

    #[test]
    fn unrelated_arrows_are_rejected() {
        let q = crate::quiver::Quiver::from_spec(
            &["v1", "v2", "u1", "u2"],
            &[
                ("x", "v2", "v1"),
                ("y", "v1", "v2"),
                ("z", "v2", "v1"),
                ("w", "v1", "v2"),
                ("X", "u2", "u1"),
                ("Y", "u1", "u2"),
                ("Z", "u2", "u1"),
                ("W", "u1", "u2"),
            ],
        )
        .unwrap();
        let d = Dimer::from_words(q, &[("+", "xyzw"), ("-", "wzyx"), ("+", "XYZW"), ("-", "WZYX")], None).unwrap();
        let q = d.quiver();
        let (x, big_x) = (q.arrow_id("x").unwrap(), q.arrow_id("X").unwrap());
        assert!(zeta_data(&d, x, x, 0).is_ok());
        assert!(matches!(zeta_data(&d, x, big_x, 0), Err(Error::Usage(_))));
    }
}
