//! Weighted projective ambient spaces: weight vectors, their singular strata,
//! cyclic quotient singularity types, and wellformedness checks at both
//! levels (the space itself, and a member cut out inside it).

use crate::exactmath::fracfield::{biv_gcd_many, biv_nonmonomial, biv_trim, Biv};
use crate::exactmath::{Field, MultiPoly, PolyRing, PrimeField};
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WpsError {
    #[error("eigenweights ({a}, {b}) are not both units mod {order}: the singularity is not isolated")]
    NotIsolated { order: i64, a: i64, b: i64 },
    #[error("stratum with support {support:?} has dimension {dim}, beyond the exact finiteness engine")]
    UnsupportedStratum { support: Vec<usize>, dim: usize },
}

/// Inverse of a mod m (m >= 1), in [0, m), when gcd(a, m) = 1.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    assert!(m >= 1);
    let (mut old_r, mut r) = (a.rem_euclid(m), m);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r == 1 {
        Some(old_s.rem_euclid(m))
    } else {
        None
    }
}

/// The ambient P(w_0, ..., w_n) with coordinate names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedSpace {
    pub names: Vec<String>,
    pub weights: Vec<i64>,
}

impl WeightedSpace {
    pub fn new(names: &[&str], weights: &[i64]) -> Self {
        assert_eq!(names.len(), weights.len());
        assert!(weights.len() >= 2);
        assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
        WeightedSpace {
            names: names.iter().map(|s| s.to_string()).collect(),
            weights: weights.to_vec(),
        }
    }

    /// Projective dimension.
    pub fn dim(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn ring(&self) -> PolyRing {
        let names: Vec<&str> = self.names.iter().map(|s| s.as_str()).collect();
        PolyRing::new(&names, &self.weights)
    }

    pub fn sum_weights(&self) -> i64 {
        self.weights.iter().sum()
    }

    pub fn product_weights(&self) -> i64 {
        self.weights.iter().product()
    }
}

impl std::fmt::Display for WeightedSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let ws: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        write!(f, "P({})", ws.join(","))
    }
}

/// Isolated cyclic quotient singularity 1/order(1, eig) in normal form:
/// 0 < eig < order, gcd(eig, order) = 1, and eig <= its inverse mod order
/// (the two choices describe the same germ with the axes swapped).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SingType {
    pub order: i64,
    pub eig: i64,
}

impl std::fmt::Display for SingType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "1/{}(1,{})", self.order, self.eig)
    }
}

/// Bring 1/order(a, b) to normal form. Returns None for order 1 (a smooth
/// point), an error if either eigenweight shares a factor with the order
/// (the fixed locus would be positive-dimensional there).
pub fn normalize_sing(order: i64, a: i64, b: i64) -> Result<Option<SingType>, WpsError> {
    assert!(order >= 1);
    if order == 1 {
        return Ok(None);
    }
    let am = a.rem_euclid(order);
    let bm = b.rem_euclid(order);
    let ai = match (mod_inverse(am, order), mod_inverse(bm, order)) {
        (Some(ai), Some(_)) => ai,
        _ => return Err(WpsError::NotIsolated { order, a: am, b: bm }),
    };
    let e = (bm * ai).rem_euclid(order);
    let einv = mod_inverse(e, order).unwrap();
    Ok(Some(SingType {
        order,
        eig: e.min(einv),
    }))
}

/// Merge repeated types into a sorted multiset with counts.
pub fn merge_basket(items: impl IntoIterator<Item = SingType>) -> Vec<(usize, SingType)> {
    let mut v: Vec<SingType> = items.into_iter().collect();
    v.sort();
    let mut out: Vec<(usize, SingType)> = vec![];
    for s in v {
        match out.last_mut() {
            Some((c, t)) if *t == s => *c += 1,
            _ => out.push((1, s)),
        }
    }
    out
}

/// A coordinate stratum fixed pointwise by a nontrivial cyclic group:
/// the locus where exactly the coordinates in `support` may be nonzero.
/// `order` is the gcd of the supporting weights; `transverse` lists, for each
/// coordinate off the stratum, its weight reduced mod order (the character by
/// which the stabilizer acts on that normal direction).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stratum {
    pub support: Vec<usize>,
    pub order: i64,
    pub transverse: Vec<(usize, i64)>,
}

impl Stratum {
    pub fn dim(&self) -> usize {
        self.support.len() - 1
    }
}

/// All strata with nontrivial stabilizer, sorted by (dimension, support).
pub fn strata_of(ws: &WeightedSpace) -> Vec<Stratum> {
    let n = ws.weights.len();
    let mut out = vec![];
    for mask in 1u32..(1 << n) {
        let support: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let order = support.iter().fold(0i64, |g, &i| g.gcd(&ws.weights[i]));
        if order <= 1 {
            continue;
        }
        let transverse = (0..n)
            .filter(|i| mask >> i & 1 == 0)
            .map(|i| (i, ws.weights[i].rem_euclid(order)))
            .collect();
        out.push(Stratum {
            support,
            order,
            transverse,
        });
    }
    out.sort_by(|a, b| (a.support.len(), &a.support).cmp(&(b.support.len(), &b.support)));
    out
}

/// A weight vector is in standard form when no n of the n+1 weights share a
/// common factor. On failure, returns the indices of an offending subset.
pub fn wellformed_space(ws: &WeightedSpace) -> Result<(), Vec<usize>> {
    let n = ws.weights.len();
    for drop in 0..n {
        let rest: Vec<usize> = (0..n).filter(|&i| i != drop).collect();
        let g = rest.iter().fold(0i64, |g, &i| g.gcd(&ws.weights[i]));
        if g > 1 {
            return Err(rest);
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum MemberWf {
    Pass,
    /// The member contains a whole positive-dimensional singular stratum.
    ContainsStratum { support: Vec<usize> },
    /// The member meets a singular stratum in a curve.
    MeetsStratumInCurve { support: Vec<usize> },
}

impl MemberWf {
    pub fn is_pass(&self) -> bool {
        matches!(self, MemberWf::Pass)
    }
}

/// A member is wellformed when it meets every positive-dimensional singular
/// stratum of the ambient space in finitely many points. Lines (dimension-1
/// strata) are exact: any nonzero restricted equation leaves finitely many
/// zeros. Plane strata are decided exactly through bivariate gcds on the
/// chart covering the stratum torus; the lines inside such a plane are
/// themselves strata and are checked on their own.
pub fn wellformed_member(
    field: &PrimeField,
    ws: &WeightedSpace,
    eqs: &[MultiPoly<PrimeField>],
) -> Result<MemberWf, WpsError> {
    for st in strata_of(ws) {
        if st.support.len() < 2 {
            continue;
        }
        let restr: Vec<MultiPoly<PrimeField>> = eqs
            .iter()
            .map(|e| e.restrict(&st.support))
            .filter(|p| !p.is_zero())
            .collect();
        if restr.is_empty() {
            return Ok(MemberWf::ContainsStratum {
                support: st.support,
            });
        }
        match st.support.len() {
            2 => {}
            3 => {
                if !ternary_stratum_finite(field, &st.support, &restr) {
                    return Ok(MemberWf::MeetsStratumInCurve {
                        support: st.support,
                    });
                }
            }
            d => {
                return Err(WpsError::UnsupportedStratum {
                    support: st.support.clone(),
                    dim: d - 1,
                })
            }
        }
    }
    Ok(MemberWf::Pass)
}

/// Do the restricted equations cut the open torus of a plane stratum down to
/// finitely many points? Dehomogenize on the chart of the first supporting
/// coordinate; the intersection is a curve exactly when all restrictions
/// share a common factor that is not a monomial.
fn ternary_stratum_finite(
    field: &PrimeField,
    support: &[usize],
    restr: &[MultiPoly<PrimeField>],
) -> bool {
    let (i1, i2) = (support[1], support[2]);
    let bivs: Vec<Biv<u64>> = restr
        .iter()
        .map(|p| {
            let mut b: Biv<u64> = vec![];
            for (e, c) in p.terms() {
                let (zd, yd) = (e[i2] as usize, e[i1] as usize);
                if b.len() <= zd {
                    b.resize(zd + 1, vec![]);
                }
                if b[zd].len() <= yd {
                    b[zd].resize(yd + 1, 0);
                }
                b[zd][yd] = field.add(&b[zd][yd], c);
            }
            biv_trim(field, b)
        })
        .collect();
    let g = biv_gcd_many(field, &bivs);
    !biv_nonmonomial(field, &g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::multipoly::random_form;
    use crate::exactmath::Rng;

    #[test]
    fn space_in_standard_form() {
        assert_eq!(wellformed_space(&WeightedSpace::new(&["x", "y", "z"], &[1, 1, 3])), Ok(()));
        assert_eq!(
            wellformed_space(&WeightedSpace::new(&["x", "y", "z"], &[2, 2, 3])),
            Err(vec![0, 1])
        );
        assert_eq!(
            wellformed_space(&WeightedSpace::new(&["a", "b", "c", "d", "e"], &[1, 2, 3, 3, 5])),
            Ok(())
        );
    }

    #[test]
    fn quotient_type_normal_form() {
        assert_eq!(
            normalize_sing(3, 2, 2),
            Ok(Some(SingType { order: 3, eig: 1 }))
        );
        assert_eq!(
            normalize_sing(5, 1, 1),
            Ok(Some(SingType { order: 5, eig: 1 }))
        );
        // 1/5(2,3) ~ 1/5(1, 3*2^{-1}) = 1/5(1,4), self-inverse
        assert_eq!(
            normalize_sing(5, 2, 3),
            Ok(Some(SingType { order: 5, eig: 4 }))
        );
        // the swap and unit rescalings land on the same normal form
        assert_eq!(normalize_sing(5, 3, 2), normalize_sing(5, 2, 3));
        assert_eq!(normalize_sing(5, 4, 1), normalize_sing(5, 2, 3));
        // 1/7(1,5): inverse of 5 is 3, so the normal form flips to (1,3)
        assert_eq!(
            normalize_sing(7, 1, 5),
            Ok(Some(SingType { order: 7, eig: 3 }))
        );
        assert_eq!(normalize_sing(1, 0, 4), Ok(None));
        assert_eq!(
            normalize_sing(4, 2, 1),
            Err(WpsError::NotIsolated { order: 4, a: 2, b: 1 })
        );
    }

    #[test]
    fn singular_strata() {
        let p113 = WeightedSpace::new(&["x", "y", "z"], &[1, 1, 3]);
        let st = strata_of(&p113);
        assert_eq!(st.len(), 1);
        assert_eq!(st[0].support, vec![2]);
        assert_eq!(st[0].order, 3);
        assert_eq!(st[0].dim(), 0);
        assert_eq!(st[0].transverse, vec![(0, 1), (1, 1)]);

        let p = WeightedSpace::new(&["a", "b", "c", "d", "e"], &[1, 2, 3, 3, 5]);
        let st = strata_of(&p);
        let summary: Vec<(Vec<usize>, i64)> =
            st.iter().map(|s| (s.support.clone(), s.order)).collect();
        assert_eq!(
            summary,
            vec![
                (vec![1], 2),
                (vec![2], 3),
                (vec![3], 3),
                (vec![4], 5),
                (vec![2, 3], 3),
            ]
        );
        assert_eq!(st[4].transverse, vec![(0, 1), (1, 2), (4, 2)]);

        assert!(strata_of(&WeightedSpace::new(&["a", "b", "c", "d"], &[1, 1, 1, 1])).is_empty());
    }

    #[test]
    fn basket_merge() {
        let b = merge_basket(vec![
            SingType { order: 3, eig: 1 },
            SingType { order: 5, eig: 2 },
            SingType { order: 3, eig: 1 },
        ]);
        assert_eq!(
            b,
            vec![
                (2, SingType { order: 3, eig: 1 }),
                (1, SingType { order: 5, eig: 2 }),
            ]
        );
    }

    #[test]
    fn member_meets_lines_finitely() {
        let field = PrimeField::new(10007);
        let ws = WeightedSpace::new(&["x", "y", "a", "b", "e"], &[1, 1, 2, 2, 3]);
        let ring = ws.ring();
        let mut rng = Rng::keyed(7, &["wf-line"]);
        let eqs = vec![
            random_form(&field, &ring, 4, &mut rng),
            random_form(&field, &ring, 4, &mut rng),
        ];
        assert_eq!(wellformed_member(&field, &ws, &eqs), Ok(MemberWf::Pass));
    }

    #[test]
    fn member_containing_a_stratum_fails() {
        let field = PrimeField::new(10007);
        let ws = WeightedSpace::new(&["x", "y", "a", "b", "e"], &[1, 1, 2, 2, 3]);
        let ring = ws.ring();
        // both quartics lie in the ideal of the (a, b) line
        let x = MultiPoly::<PrimeField>::var(&field, &ring, 0);
        let y = MultiPoly::<PrimeField>::var(&field, &ring, 1);
        let a = MultiPoly::<PrimeField>::var(&field, &ring, 2);
        let b = MultiPoly::<PrimeField>::var(&field, &ring, 3);
        let f = x.pow(&field, 2).mul(&field, &a);
        let g = y.mul(&field, &x).mul(&field, &b);
        assert_eq!(
            wellformed_member(&field, &ws, &[f, g]),
            Ok(MemberWf::ContainsStratum {
                support: vec![2, 3]
            })
        );
    }

    #[test]
    fn member_meeting_a_plane_in_a_curve_fails() {
        let field = PrimeField::new(10007);
        let ws = WeightedSpace::new(&["x", "a", "b", "c"], &[1, 3, 3, 3]);
        let mut rng = Rng::keyed(11, &["wf-plane"]);
        let f = random_form(&field, &ws.ring(), 6, &mut rng);
        assert_eq!(
            wellformed_member(&field, &ws, &[f]),
            Ok(MemberWf::MeetsStratumInCurve {
                support: vec![1, 2, 3]
            })
        );
    }

    #[test]
    fn member_meeting_a_plane_finitely_passes() {
        let field = PrimeField::new(10007);
        let ws = WeightedSpace::new(&["x", "y", "a", "b", "c"], &[1, 1, 3, 3, 3]);
        let mut rng = Rng::keyed(13, &["wf-plane-ci"]);
        let eqs = vec![
            random_form(&field, &ws.ring(), 6, &mut rng),
            random_form(&field, &ws.ring(), 6, &mut rng),
        ];
        assert_eq!(wellformed_member(&field, &ws, &eqs), Ok(MemberWf::Pass));
    }

    #[test]
    fn higher_strata_are_refused_honestly() {
        let field = PrimeField::new(10007);
        let ws = WeightedSpace::new(&["a", "b", "c", "d"], &[3, 3, 3, 3]);
        let mut rng = Rng::keyed(17, &["wf-high"]);
        let eqs = vec![
            random_form(&field, &ws.ring(), 6, &mut rng),
            random_form(&field, &ws.ring(), 6, &mut rng),
        ];
        assert_eq!(
            wellformed_member(&field, &ws, &eqs),
            Err(WpsError::UnsupportedStratum {
                support: vec![0, 1, 2, 3],
                dim: 3
            })
        );
    }

    #[test]
    fn inverse_mod() {
        assert_eq!(mod_inverse(3, 7), Some(5));
        assert_eq!(mod_inverse(-4, 7), Some(5));
        assert_eq!(mod_inverse(2, 4), None);
        assert_eq!(mod_inverse(0, 1), Some(0));
    }
}
