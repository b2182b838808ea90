//! The four equation formats with parameterized degree bookkeeping:
//! hypersurface, codimension-2 complete intersection, codimension-3 5x5
//! Pfaffian, and the codimension-4 3x3-minors (Segre) format. Computes
//! Hilbert numerators, socle degrees, adjunction numbers, and builds the
//! member equations for the matrix formats.

use crate::exactmath::{
    geometric_slices, rat_int, series_mul, Field, LinExpr, MultiPoly, SeriesPoly,
};
use crate::wps::WeightedSpace;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("entry degrees violate the four-point rule on rows/columns {{{i},{j},{k},{l}}}")]
    IncompatibleMatrix {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
    },
    #[error("{which} = {expr} is not an integer for every r")]
    NonIntegralDegree { which: String, expr: LinExpr },
    #[error("numerator with socle {socle} does not terminate: {detail}")]
    NotPolynomial { socle: i64, detail: String },
    #[error("degree {expr} at r = {r}: {detail}")]
    InvalidDegree {
        expr: LinExpr,
        r: i64,
        detail: String,
    },
    #[error("entry ({i},{j}): {detail}")]
    EntryMismatch { i: usize, j: usize, detail: String },
}

/// Position of the (i, j) entry, i < j < 5, in the packed upper triangle of a
/// symmetric 5x5 matrix, ordered (0,1),(0,2),...,(3,4).
pub fn pf_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < 5);
    i * (9 - i) / 2 + (j - i - 1)
}

pub const PF_PAIRS: [(usize, usize); 10] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (0, 4),
    (1, 2),
    (1, 3),
    (1, 4),
    (2, 3),
    (2, 4),
    (3, 4),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FormatSpec {
    Hypersurface {
        d: LinExpr,
    },
    Ci {
        d1: LinExpr,
        d2: LinExpr,
    },
    Pfaffian5 {
        /// Packed upper triangle of the symmetric entry-degree matrix.
        m: Vec<LinExpr>,
        /// Entries that are the zero polynomial in the special member.
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        zeros: Vec<(usize, usize)>,
    },
    P2xP2 {
        u: Vec<LinExpr>,
        v: Vec<LinExpr>,
    },
}

impl FormatSpec {
    pub fn codim(&self) -> usize {
        match self {
            FormatSpec::Hypersurface { .. } => 1,
            FormatSpec::Ci { .. } => 2,
            FormatSpec::Pfaffian5 { .. } => 3,
            FormatSpec::P2xP2 { .. } => 4,
        }
    }

    /// Entry-degree matrix from a Pfaffian half-weight row: m_ij = b_i + b_j.
    pub fn pfaffian_from_b(b: &[LinExpr], zeros: Vec<(usize, usize)>) -> Self {
        assert_eq!(b.len(), 5);
        FormatSpec::Pfaffian5 {
            m: PF_PAIRS.iter().map(|&(i, j)| b[i] + b[j]).collect(),
            zeros,
        }
    }

    /// Socle degree as a function of r.
    pub fn socle_expr(&self) -> Result<LinExpr, FormatError> {
        Ok(match self {
            FormatSpec::Hypersurface { d } => *d,
            FormatSpec::Ci { d1, d2 } => *d1 + *d2,
            FormatSpec::Pfaffian5 { m, .. } => pfaffian_data(m)?.s,
            FormatSpec::P2xP2 { u, v } => {
                let total: LinExpr = u.iter().chain(v.iter()).copied().sum();
                total * 2
            }
        })
    }
}

/// Degree bookkeeping of the 5x5 Pfaffian format: half-weights b with
/// m_ij = b_i + b_j, the five Pfaffian degrees d_i = (Σb) − b_i, and the
/// socle s = 2 Σb.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PfaffianData {
    pub b: Vec<LinExpr>,
    pub d: Vec<LinExpr>,
    pub s: LinExpr,
}

impl PfaffianData {
    pub fn entry(&self, i: usize, j: usize) -> LinExpr {
        self.b[i] + self.b[j]
    }
}

pub fn pfaffian_data(m: &[LinExpr]) -> Result<PfaffianData, FormatError> {
    assert_eq!(m.len(), 10);
    let e = |i: usize, j: usize| m[pf_index(i, j)];
    // four-point compatibility on every 4-subset
    for i in 0..5 {
        for j in i + 1..5 {
            for k in j + 1..5 {
                for l in k + 1..5 {
                    let p = e(i, j) + e(k, l);
                    if p != e(i, k) + e(j, l) || p != e(i, l) + e(j, k) {
                        return Err(FormatError::IncompatibleMatrix { i, j, k, l });
                    }
                }
            }
        }
    }
    let mut b = vec![];
    for i in 0..5 {
        let others: Vec<usize> = (0..5).filter(|&x| x != i).collect();
        let (j, k) = (others[0], others[1]);
        let num = e(i.min(j), i.max(j)) + e(i.min(k), i.max(k)) - e(j, k);
        b.push(num.halve().ok_or_else(|| FormatError::NonIntegralDegree {
            which: format!("b{}", i + 1),
            expr: num,
        })?);
    }
    debug_assert!(PF_PAIRS.iter().all(|&(i, j)| b[i] + b[j] == e(i, j)));
    let sigma: LinExpr = b.iter().copied().sum();
    let d: Vec<LinExpr> = b.iter().map(|&bi| sigma - bi).collect();
    for (i, di) in d.iter().enumerate() {
        if !di.always_integral() {
            return Err(FormatError::NonIntegralDegree {
                which: format!("d{}", i + 1),
                expr: *di,
            });
        }
    }
    let s = sigma * 2;
    if !s.always_integral() {
        return Err(FormatError::NonIntegralDegree {
            which: "s".to_string(),
            expr: s,
        });
    }
    Ok(PfaffianData { b, d, s })
}

/// Exact numerator data of the Hilbert series N(t)/Π(1−t^{w_i}).
#[derive(Clone, Debug, PartialEq)]
pub struct HilbertData {
    pub numerator: SeriesPoly,
    /// Anticanonical twist: −K = O(k), k = Σweights − socle.
    pub k: i64,
    pub codim: usize,
    pub socle: i64,
}

fn positive_degree(e: &LinExpr, r: i64) -> Result<i64, FormatError> {
    match e.eval(r) {
        Some(v) if v >= 1 => Ok(v),
        Some(v) => Err(FormatError::InvalidDegree {
            expr: *e,
            r,
            detail: format!("evaluates to {v}; need a positive integer"),
        }),
        None => Err(FormatError::InvalidDegree {
            expr: *e,
            r,
            detail: "evaluates to a half-integer".to_string(),
        }),
    }
}

pub fn hilbert_numerator(
    fs: &FormatSpec,
    ws: &WeightedSpace,
    r: i64,
) -> Result<HilbertData, FormatError> {
    let (numerator, socle) = match fs {
        FormatSpec::Hypersurface { d } => {
            let dv = positive_degree(d, r)?;
            (SeriesPoly::one_minus_t_pow(dv as usize), dv)
        }
        FormatSpec::Ci { d1, d2 } => {
            let a = positive_degree(d1, r)?;
            let b = positive_degree(d2, r)?;
            (
                SeriesPoly::one_minus_t_pow(a as usize).mul(&SeriesPoly::one_minus_t_pow(b as usize)),
                a + b,
            )
        }
        FormatSpec::Pfaffian5 { m, .. } => {
            let pd = pfaffian_data(m)?;
            let s = positive_degree(&pd.s, r)?;
            let mut n = SeriesPoly::one();
            for di in &pd.d {
                let dv = positive_degree(di, r)?;
                if dv >= s {
                    return Err(FormatError::InvalidDegree {
                        expr: *di,
                        r,
                        detail: format!("pfaffian degree {dv} not below the socle {s}"),
                    });
                }
                n = n.sub(&SeriesPoly::monomial(rat_int(1), dv as usize));
                n = n.add(&SeriesPoly::monomial(rat_int(1), (s - dv) as usize));
            }
            n = n.sub(&SeriesPoly::monomial(rat_int(1), s as usize));
            (n, s)
        }
        FormatSpec::P2xP2 { u, v } => {
            assert_eq!((u.len(), v.len()), (3, 3));
            let evals = |es: &[LinExpr]| -> Result<Vec<i64>, FormatError> {
                es.iter()
                    .map(|e| match e.eval(r) {
                        Some(x) if x >= 0 => Ok(x),
                        _ => Err(FormatError::InvalidDegree {
                            expr: *e,
                            r,
                            detail: "bi-weight must be a nonnegative integer".to_string(),
                        }),
                    })
                    .collect()
            };
            let ue = evals(u)?;
            let ve = evals(v)?;
            let socle = 2 * (ue.iter().sum::<i64>() + ve.iter().sum::<i64>());
            // the minimal entry degree: when it is 0 the character sum has
            // unbounded coefficients already in degree 0
            let minsum = ue.iter().min().unwrap() + ve.iter().min().unwrap();
            if minsum < 1 {
                return Err(FormatError::NotPolynomial {
                    socle,
                    detail: "a zero-degree entry makes the character sum diverge".to_string(),
                });
            }
            let bound = (2 * socle + 2) as usize;
            let dmax = bound / (minsum as usize);
            let au = geometric_slices(&ue, dmax, bound);
            let av = geometric_slices(&ve, dmax, bound);
            let mut acc = SeriesPoly::zero();
            for d in 0..=dmax {
                acc = acc.add(&series_mul(&au[d], &av[d], bound));
            }
            let mut prod = SeriesPoly::one();
            for &a in &ue {
                for &c in &ve {
                    prod = prod.mul(&SeriesPoly::one_minus_t_pow((a + c) as usize));
                }
            }
            let full = series_mul(&prod, &acc, bound);
            for deg in (socle as usize + 1)..=bound {
                if !full.coeff(deg).is_zero() {
                    return Err(FormatError::NotPolynomial {
                        socle,
                        detail: format!("coefficient {} at degree {deg}", full.coeff(deg)),
                    });
                }
            }
            (full.truncate(socle as usize), socle)
        }
    };
    Ok(HilbertData {
        numerator,
        k: ws.sum_weights() - socle,
        codim: fs.codim(),
        socle,
    })
}

/// Degrees of the nine 2x2 minors of a 3x3 matrix with deg T_ij = u_i + v_j,
/// ordered by row pair (0,1),(0,2),(1,2) then column pair in the same order.
pub fn minor_degrees(u: &[LinExpr], v: &[LinExpr]) -> Vec<LinExpr> {
    let pairs = [(0usize, 1usize), (0, 2), (1, 2)];
    let mut out = vec![];
    for &(i, j) in &pairs {
        for &(k, l) in &pairs {
            out.push(u[i] + u[j] + v[k] + v[l]);
        }
    }
    out
}

/// Consistency of a placement map (matrix position -> ambient variable)
/// against the format's entry degrees: placed entries must match the
/// variable's weight exactly, unplaced entries are generic forms and need a
/// nonnegative degree, declared zero entries stay unplaced.
pub fn format_entry_check(
    fs: &FormatSpec,
    placement: &[((usize, usize), usize)],
    ws: &WeightedSpace,
    r: i64,
) -> Result<(), FormatError> {
    let positions: Vec<((usize, usize), LinExpr, bool)> = match fs {
        FormatSpec::Hypersurface { .. } | FormatSpec::Ci { .. } => {
            if placement.is_empty() {
                return Ok(());
            }
            return Err(FormatError::EntryMismatch {
                i: placement[0].0 .0,
                j: placement[0].0 .1,
                detail: "format has no entry matrix".to_string(),
            });
        }
        FormatSpec::Pfaffian5 { m, zeros } => PF_PAIRS
            .iter()
            .map(|&(i, j)| ((i, j), m[pf_index(i, j)], zeros.contains(&(i, j))))
            .collect(),
        FormatSpec::P2xP2 { u, v } => {
            let mut out = vec![];
            for (i, &a) in u.iter().enumerate() {
                for (j, &c) in v.iter().enumerate() {
                    out.push(((i, j), a + c, false));
                }
            }
            out
        }
    };
    for &((pi, pj), var) in placement {
        let key = match fs {
            FormatSpec::Pfaffian5 { .. } => (pi.min(pj), pi.max(pj)),
            _ => (pi, pj),
        };
        let Some(&(_, deg, zero)) = positions.iter().find(|(p, _, _)| *p == key) else {
            return Err(FormatError::EntryMismatch {
                i: pi,
                j: pj,
                detail: "no such matrix position".to_string(),
            });
        };
        if zero {
            return Err(FormatError::EntryMismatch {
                i: pi,
                j: pj,
                detail: "declared zero entry mapped to a variable".to_string(),
            });
        }
        let want = deg.eval(r).ok_or(FormatError::InvalidDegree {
            expr: deg,
            r,
            detail: "entry degree is a half-integer".to_string(),
        })?;
        let got = ws.weights[var];
        if got != want {
            return Err(FormatError::EntryMismatch {
                i: pi,
                j: pj,
                detail: format!(
                    "degree {want} but variable '{}' has weight {got}",
                    ws.names[var]
                ),
            });
        }
    }
    for (pos, deg, zero) in positions {
        if zero || placement.iter().any(|&(p, _)| p == pos) {
            continue;
        }
        match deg.eval(r) {
            Some(v) if v >= 0 => {}
            _ => {
                return Err(FormatError::EntryMismatch {
                    i: pos.0,
                    j: pos.1,
                    detail: format!("generic form of invalid degree {deg} at r = {r}"),
                })
            }
        }
    }
    Ok(())
}

/// The five maximal Pfaffians of a skew 5x5 matrix given by its upper
/// triangle (same packed order as pf_index). Equation i omits row/column i,
/// so its degree is d_i from pfaffian_data.
pub fn pfaffian_equations<F: Field>(f: &F, upper: &[MultiPoly<F>]) -> Vec<MultiPoly<F>> {
    assert_eq!(upper.len(), 10);
    let e = |i: usize, j: usize| &upper[pf_index(i, j)];
    (0..5)
        .map(|i| {
            let c: Vec<usize> = (0..5).filter(|&x| x != i).collect();
            let (j, k, l, m) = (c[0], c[1], c[2], c[3]);
            e(j, k)
                .mul(f, e(l, m))
                .sub(f, &e(j, l).mul(f, e(k, m)))
                .add(f, &e(j, m).mul(f, e(k, l)))
        })
        .collect()
}

/// The nine 2x2 minors of a 3x3 matrix of forms, in the same order as
/// minor_degrees.
pub fn segre_equations<F: Field>(f: &F, t: &[Vec<MultiPoly<F>>]) -> Vec<MultiPoly<F>> {
    assert!(t.len() == 3 && t.iter().all(|row| row.len() == 3));
    let pairs = [(0usize, 1usize), (0, 2), (1, 2)];
    let mut out = vec![];
    for &(i, j) in &pairs {
        for &(k, l) in &pairs {
            out.push(t[i][k].mul(f, &t[j][l]).sub(f, &t[i][l].mul(f, &t[j][k])));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{PrimeField, Rng};

    fn le(slope: i64, offset: i64) -> LinExpr {
        LinExpr::new(slope, offset)
    }

    #[test]
    fn packed_index_roundtrip() {
        let mut seen = vec![];
        for &(i, j) in PF_PAIRS.iter() {
            seen.push(pf_index(i, j));
        }
        assert_eq!(seen, (0..10).collect::<Vec<_>>());
    }

    #[test]
    fn half_weight_row_reproduces_entry_degrees() {
        // b = 1/2 (1, 1, 1, 2r-1, 2r-1)
        let b = [
            LinExpr::half(0, 1),
            LinExpr::half(0, 1),
            LinExpr::half(0, 1),
            LinExpr::half(2, -1),
            LinExpr::half(2, -1),
        ];
        let m: Vec<LinExpr> = PF_PAIRS.iter().map(|&(i, j)| b[i] + b[j]).collect();
        let pd = pfaffian_data(&m).unwrap();
        assert_eq!(pd.b, b.to_vec());
        assert_eq!(
            pd.d,
            vec![le(2, 0), le(2, 0), le(2, 0), le(1, 1), le(1, 1)]
        );
        assert_eq!(pd.s, le(4, 1));
        for &(i, j) in PF_PAIRS.iter() {
            assert_eq!(pd.entry(i, j), m[pf_index(i, j)]);
        }
    }

    #[test]
    fn uniform_entries() {
        let m = vec![le(0, 1); 10];
        let pd = pfaffian_data(&m).unwrap();
        assert_eq!(pd.b, vec![LinExpr::half(0, 1); 5]);
        assert_eq!(pd.d, vec![le(0, 2); 5]);
        assert_eq!(pd.s, le(0, 5));
    }

    #[test]
    fn four_point_failure() {
        // m_12 + m_34 = 6 but m_13 + m_24 = 2
        let mut m = vec![le(0, 1); 10];
        m[pf_index(2, 3)] = le(0, 5);
        assert!(matches!(
            pfaffian_data(&m),
            Err(FormatError::IncompatibleMatrix { .. })
        ));
    }

    #[test]
    fn half_integral_degrees_rejected() {
        // b = (1/2, 1/2, 1/2, 1/2, 1) gives d_1 = 5/2
        let b = [
            LinExpr::half(0, 1),
            LinExpr::half(0, 1),
            LinExpr::half(0, 1),
            LinExpr::half(0, 1),
            le(0, 1),
        ];
        let m: Vec<LinExpr> = PF_PAIRS.iter().map(|&(i, j)| b[i] + b[j]).collect();
        match pfaffian_data(&m) {
            Err(FormatError::NonIntegralDegree { which, .. }) => assert_eq!(which, "d1"),
            other => panic!("expected NonIntegralDegree, got {other:?}"),
        }
    }

    #[test]
    fn grassmannian_numerator() {
        let fs = FormatSpec::Pfaffian5 {
            m: vec![le(0, 1); 10],
            zeros: vec![],
        };
        let ws = WeightedSpace::new(&["a", "b", "c", "d", "e", "f"], &[1, 1, 1, 1, 1, 1]);
        let hd = hilbert_numerator(&fs, &ws, 0).unwrap();
        assert_eq!(hd.numerator, SeriesPoly::from_ints(&[1, 0, -5, 5, 0, -1]));
        assert_eq!((hd.k, hd.codim, hd.socle), (1, 3, 5));
    }

    #[test]
    fn segre_numerator() {
        let fs = FormatSpec::P2xP2 {
            u: vec![le(0, 0); 3],
            v: vec![le(0, 1); 3],
        };
        let names: Vec<String> = (0..9).map(|i| format!("t{i}")).collect();
        let nref: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let ws = WeightedSpace::new(&nref, &[1; 9]);
        let hd = hilbert_numerator(&fs, &ws, 0).unwrap();
        assert_eq!(
            hd.numerator,
            SeriesPoly::from_ints(&[1, 0, -9, 16, -9, 0, 1])
        );
        assert_eq!((hd.k, hd.codim, hd.socle), (3, 4, 6));
    }

    #[test]
    fn ci_numerator_and_twist() {
        // two equations of degree 2r in P(1,1,r,r,2r-1) at r = 2
        let fs = FormatSpec::Ci {
            d1: le(2, 0),
            d2: le(2, 0),
        };
        let ws = WeightedSpace::new(&["x", "y", "a", "b", "z"], &[1, 1, 2, 2, 3]);
        let hd = hilbert_numerator(&fs, &ws, 2).unwrap();
        assert_eq!(
            hd.numerator,
            SeriesPoly::one_minus_t_pow(4).mul(&SeriesPoly::one_minus_t_pow(4))
        );
        assert_eq!((hd.k, hd.codim, hd.socle), (1, 2, 8));
    }

    #[test]
    fn hypersurface_numerator() {
        // degree 4r-1 in P(1, r, r, 2r-1) at r = 3
        let fs = FormatSpec::Hypersurface { d: le(4, -1) };
        let ws = WeightedSpace::new(&["x", "a", "b", "z"], &[1, 3, 3, 5]);
        let hd = hilbert_numerator(&fs, &ws, 3).unwrap();
        assert_eq!(hd.numerator, SeriesPoly::one_minus_t_pow(11));
        assert_eq!((hd.k, hd.codim, hd.socle), (1, 1, 11));
    }

    #[test]
    fn pfaffian_numerator_values() {
        let b = [
            LinExpr::half(0, 1),
            LinExpr::half(0, 1),
            LinExpr::half(0, 1),
            LinExpr::half(2, -1),
            LinExpr::half(2, -1),
        ];
        let fs = FormatSpec::pfaffian_from_b(&b, vec![]);
        let ws = WeightedSpace::new(&["x", "y", "z", "a", "b", "e"], &[1, 1, 1, 2, 2, 3]);
        let hd = hilbert_numerator(&fs, &ws, 2).unwrap();
        // d = (4,4,4,3,3), s = 9
        assert_eq!(
            hd.numerator,
            SeriesPoly::from_ints(&[1, 0, 0, -2, -3, 3, 2, 0, 0, -1])
        );
        assert_eq!((hd.k, hd.codim, hd.socle), (1, 3, 9));
    }

    #[test]
    fn gorenstein_symmetry_of_numerators() {
        // sign (-1)^codim, checked across all four formats
        let cases: Vec<(FormatSpec, Vec<i64>, i64)> = vec![
            (FormatSpec::Hypersurface { d: le(4, -1) }, vec![1, 3, 3, 5], 3),
            (
                FormatSpec::Ci {
                    d1: le(2, 0),
                    d2: le(2, 1),
                },
                vec![1, 2, 3, 3, 7],
                3,
            ),
            (
                FormatSpec::pfaffian_from_b(
                    &[
                        le(0, 0),
                        le(0, 1),
                        le(0, 1),
                        le(1, -1),
                        le(1, 0),
                    ],
                    vec![],
                ),
                vec![1, 1, 2, 3, 3, 5],
                3,
            ),
            (
                FormatSpec::P2xP2 {
                    u: vec![le(0, 0), le(0, 0), le(1, -1)],
                    v: vec![le(0, 1), le(0, 1), le(1, 0)],
                },
                vec![1, 1, 1, 1, 3, 3, 5],
                3,
            ),
        ];
        for (fs, weights, r) in cases {
            let names: Vec<String> = (0..weights.len()).map(|i| format!("v{i}")).collect();
            let nref: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
            let ws = WeightedSpace::new(&nref, &weights);
            let hd = hilbert_numerator(&fs, &ws, r).unwrap();
            let rev = hd.numerator.reverse(hd.socle as usize).unwrap();
            let sign = if hd.codim.is_multiple_of(2) { 1 } else { -1 };
            assert_eq!(rev, hd.numerator.scale(&rat_int(sign)), "codim {}", hd.codim);
            assert_eq!(hd.numerator.coeff(0), rat_int(1));
            assert_eq!(hd.numerator.vanishing_order_at_one(hd.codim + 2), hd.codim);
        }
    }

    #[test]
    fn character_sum_divergence_detected() {
        let fs = FormatSpec::P2xP2 {
            u: vec![le(0, 0); 3],
            v: vec![le(0, 0), le(0, 1), le(0, 1)],
        };
        let ws = WeightedSpace::new(&["a", "b", "c", "d", "e", "f", "g", "h", "i"], &[1; 9]);
        assert!(matches!(
            hilbert_numerator(&fs, &ws, 0),
            Err(FormatError::NotPolynomial { .. })
        ));
    }

    #[test]
    fn degenerate_degree_rejected() {
        let fs = FormatSpec::Hypersurface { d: le(1, -1) };
        let ws = WeightedSpace::new(&["x", "y"], &[1, 1]);
        assert!(matches!(
            hilbert_numerator(&fs, &ws, 1),
            Err(FormatError::InvalidDegree { .. })
        ));
    }

    #[test]
    fn minor_degree_multiset() {
        // u = (0, 0, r-1), v = (1, 1, r)
        let u = [le(0, 0), le(0, 0), le(1, -1)];
        let v = [le(0, 1), le(0, 1), le(1, 0)];
        let mut degs = minor_degrees(&u, &v);
        degs.sort();
        let mut expect = vec![le(0, 2)];
        expect.extend(vec![le(1, 1); 4]);
        expect.extend(vec![le(2, 0); 4]);
        expect.sort();
        assert_eq!(degs, expect);
    }

    #[test]
    fn entry_check_against_ambient() {
        // 3x3 matrix over P(1,1,1,1,r,r,2r-1): rows (x0 y0 c / a b d / * * e)
        let fs = FormatSpec::P2xP2 {
            u: vec![le(0, 0), le(0, 0), le(1, -1)],
            v: vec![le(0, 1), le(0, 1), le(1, 0)],
        };
        let ws = WeightedSpace::new(
            &["x0", "y0", "a", "b", "c", "d", "e"],
            &[1, 1, 1, 1, 2, 2, 3],
        );
        let placement = vec![
            ((0, 0), 0),
            ((0, 1), 1),
            ((0, 2), 4),
            ((1, 0), 2),
            ((1, 1), 3),
            ((1, 2), 5),
            ((2, 2), 6),
        ];
        assert_eq!(format_entry_check(&fs, &placement, &ws, 2), Ok(()));
        // swapping c (weight r) into a weight-1 slot must be reported
        let mut bad = placement.clone();
        bad[0].1 = 4;
        assert!(matches!(
            format_entry_check(&fs, &bad, &ws, 2),
            Err(FormatError::EntryMismatch { i: 0, j: 0, .. })
        ));
    }

    #[test]
    fn entry_check_pfaffian_with_zero_entries() {
        let b = [
            LinExpr::half(0, 1),
            LinExpr::half(0, 1),
            LinExpr::half(0, 1),
            LinExpr::half(2, -1),
            LinExpr::half(2, -1),
        ];
        let fs = FormatSpec::pfaffian_from_b(&b, vec![(1, 2), (3, 4)]);
        let ws = WeightedSpace::new(&["x", "y", "z", "a", "b", "e"], &[1, 1, 1, 2, 2, 3]);
        // m_01 = m_02 = 1: place two of the weight-1 variables
        let placement = vec![((0, 1), 0), ((0, 2), 1)];
        assert_eq!(format_entry_check(&fs, &placement, &ws, 2), Ok(()));
        let onto_zero = vec![((1, 2), 2)];
        assert!(matches!(
            format_entry_check(&fs, &onto_zero, &ws, 2),
            Err(FormatError::EntryMismatch { i: 1, j: 2, .. })
        ));
    }

    #[test]
    fn pfaffians_vanish_on_rank_two_matrix() {
        let f = PrimeField::new(101);
        let ring = crate::exactmath::PolyRing::new(&["t"], &[1]);
        let mut rng = Rng::keyed(3, &["pf-rank2"]);
        let u: Vec<u64> = (0..5).map(|_| rng.below(101)).collect();
        let v: Vec<u64> = (0..5).map(|_| rng.below(101)).collect();
        let upper: Vec<MultiPoly<PrimeField>> = PF_PAIRS
            .iter()
            .map(|&(i, j)| {
                let c = f.sub(&f.mul(&u[i], &v[j]), &f.mul(&u[j], &v[i]));
                MultiPoly::constant(&f, c, ring.nvars())
            })
            .collect();
        for pf in pfaffian_equations(&f, &upper) {
            assert!(pf.is_zero());
        }
    }

    #[test]
    fn minors_vanish_on_rank_one_matrix() {
        let f = PrimeField::new(101);
        let names = ["x0", "x1", "x2", "y0", "y1", "y2"];
        let ring = crate::exactmath::PolyRing::new(&names, &[1; 6]);
        let t: Vec<Vec<MultiPoly<PrimeField>>> = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| {
                        MultiPoly::var(&f, &ring, i).mul(&f, &MultiPoly::var(&f, &ring, 3 + j))
                    })
                    .collect()
            })
            .collect();
        for m in segre_equations(&f, &t) {
            assert!(m.is_zero());
        }
    }

    #[test]
    fn socle_expressions() {
        let b = [
            LinExpr::half(0, 1),
            LinExpr::half(0, 1),
            LinExpr::half(0, 1),
            LinExpr::half(2, -1),
            LinExpr::half(2, -1),
        ];
        assert_eq!(
            FormatSpec::pfaffian_from_b(&b, vec![]).socle_expr(),
            Ok(le(4, 1))
        );
        let p2 = FormatSpec::P2xP2 {
            u: vec![le(0, 0), le(0, 0), le(1, -1)],
            v: vec![le(0, 1), le(0, 1), le(1, 0)],
        };
        assert_eq!(p2.socle_expr(), Ok(le(4, 2)));
        assert_eq!(
            (FormatSpec::Ci {
                d1: le(2, 0),
                d2: le(2, 1)
            })
            .socle_expr(),
            Ok(le(4, 1))
        );
    }
}
