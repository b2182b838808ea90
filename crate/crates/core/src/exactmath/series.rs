//! Exact polynomials in one variable t over Q, used for Hilbert numerators
//! and truncated Hilbert series expansions. Everything is a genuine
//! polynomial; "series" operations just carry a truncation bound.

use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::field::{rat_int, Rat};
use super::linexpr::LinExpr;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("NotDivisible: polynomial does not vanish at t=1 (stage {stage})")]
    NotDivisible { stage: usize },
}

/// coeffs[i] is the coefficient of t^i; trailing zeros are trimmed so the
/// representation is canonical.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SeriesPoly {
    coeffs: Vec<Rat>,
}

impl SeriesPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map(Rat::is_zero) == Some(true) {
            coeffs.pop();
        }
        SeriesPoly { coeffs }
    }

    pub fn zero() -> Self {
        SeriesPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        SeriesPoly::monomial(rat_int(1), 0)
    }

    pub fn monomial(c: Rat, deg: usize) -> Self {
        if c.is_zero() {
            return SeriesPoly::zero();
        }
        let mut v = vec![Rat::zero(); deg + 1];
        v[deg] = c;
        SeriesPoly { coeffs: v }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        SeriesPoly::new(c.iter().map(|&x| rat_int(x)).collect())
    }

    /// 1 - t^d
    pub fn one_minus_t_pow(d: usize) -> Self {
        debug_assert!(d > 0);
        let mut v = vec![Rat::zero(); d + 1];
        v[0] = Rat::one();
        v[d] = -Rat::one();
        SeriesPoly { coeffs: v }
    }

    /// 1 + t^w + t^2w + ... up to degree `bound`
    pub fn geometric(w: usize, bound: usize) -> Self {
        debug_assert!(w > 0);
        let mut v = vec![Rat::zero(); bound + 1];
        let mut i = 0;
        while i <= bound {
            v[i] = Rat::one();
            i += w;
        }
        SeriesPoly::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn add(&self, other: &SeriesPoly) -> SeriesPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        SeriesPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &SeriesPoly) -> SeriesPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        SeriesPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> SeriesPoly {
        SeriesPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> SeriesPoly {
        if c.is_zero() {
            return SeriesPoly::zero();
        }
        SeriesPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Full exact product.
    pub fn mul(&self, other: &SeriesPoly) -> SeriesPoly {
        if self.is_zero() || other.is_zero() {
            return SeriesPoly::zero();
        }
        let mut v = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                v[i + j] += a * b;
            }
        }
        SeriesPoly::new(v)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_at_one(&self) -> Rat {
        self.coeffs.iter().fold(Rat::zero(), |a, c| a + c)
    }

    /// Divide exactly by (1-t), c times. Each stage requires the running
    /// polynomial to vanish at t=1.
    pub fn divide_by_one_minus_t(&self, c: usize) -> Result<SeriesPoly, SeriesError> {
        let mut cur = self.clone();
        for stage in 0..c {
            if cur.is_zero() {
                continue; // 0/(1-t) = 0
            }
            // p = (1-t) q  <=>  q_i = p_0 + ... + p_i, with total sum 0
            let mut acc = Rat::zero();
            let mut q = Vec::with_capacity(cur.coeffs.len());
            for p in &cur.coeffs {
                acc += p;
                q.push(acc.clone());
            }
            match q.pop() {
                Some(last) if last.is_zero() => {}
                _ => return Err(SeriesError::NotDivisible { stage }),
            }
            cur = SeriesPoly::new(q);
        }
        Ok(cur)
    }

    /// Largest e <= cap with (1-t)^e dividing self (zero polynomial reports cap).
    pub fn vanishing_order_at_one(&self, cap: usize) -> usize {
        let mut cur = self.clone();
        for e in 0..cap {
            if cur.is_zero() {
                return cap;
            }
            match cur.divide_by_one_minus_t(1) {
                Ok(next) => cur = next,
                Err(_) => return e,
            }
        }
        cap
    }

    /// t^s · self(1/t), defined when s >= deg.
    pub fn reverse(&self, s: usize) -> Option<SeriesPoly> {
        let d = match self.degree() {
            None => return Some(SeriesPoly::zero()),
            Some(d) => d,
        };
        if s < d {
            return None;
        }
        let mut v = vec![Rat::zero(); s + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[s - i] = c.clone();
        }
        Some(SeriesPoly::new(v))
    }

    pub fn truncate(&self, bound: usize) -> SeriesPoly {
        SeriesPoly::new(
            self.coeffs
                .iter()
                .take(bound + 1)
                .cloned()
                .collect::<Vec<_>>(),
        )
    }
}

/// Product truncated at degree `bound`.
pub fn series_mul(a: &SeriesPoly, b: &SeriesPoly, bound: usize) -> SeriesPoly {
    let mut v = vec![Rat::zero(); bound + 1];
    for (i, x) in a.coeffs().iter().enumerate() {
        if i > bound || x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs().iter().enumerate() {
            if i + j > bound {
                break;
            }
            if y.is_zero() {
                continue;
            }
            v[i + j] += x * y;
        }
    }
    SeriesPoly::new(v)
}

/// Complete homogeneous symmetric polynomial h_d evaluated at the monomials
/// t^{e_1}, ..., t^{e_m} with e_i = exps[i](r). Exponents must evaluate to
/// nonnegative integers (callers validate formats before reaching this).
pub fn complete_homogeneous(d: usize, exps: &[LinExpr], r: i64) -> SeriesPoly {
    let es: Vec<usize> = exps
        .iter()
        .map(|e| {
            let v = e.eval(r).expect("non-integral exponent");
            assert!(v >= 0, "negative exponent");
            v as usize
        })
        .collect();
    // one variable at a time: h_j(x_1..x_k) = sum_i x_k^i h_{j-i}(x_1..x_{k-1})
    let mut table: Vec<SeriesPoly> = (0..=d)
        .map(|j| {
            if j == 0 {
                SeriesPoly::one()
            } else {
                SeriesPoly::zero()
            }
        })
        .collect();
    for &e in &es {
        let mut next = Vec::with_capacity(d + 1);
        for j in 0..=d {
            let mut acc = SeriesPoly::zero();
            for i in 0..=j {
                let shifted = table[j - i].mul(&SeriesPoly::monomial(Rat::one(), e * i));
                acc = acc.add(&shifted);
            }
            next.push(acc);
        }
        table = next;
    }
    table.pop().unwrap()
}

/// Slices by x-degree of the product over i of 1/(1 - x t^{e_i}): element d
/// is h_d(t^{e_1}, ..., t^{e_m}) truncated past `bound`. Built incrementally
/// in d, so the whole table costs m * dmax * bound coefficient operations,
/// where computing each slice from scratch would not.
pub fn geometric_slices(es: &[i64], dmax: usize, bound: usize) -> Vec<SeriesPoly> {
    let mut a: Vec<SeriesPoly> = (0..=dmax)
        .map(|d| if d == 0 { SeriesPoly::one() } else { SeriesPoly::zero() })
        .collect();
    for &e in es {
        assert!(e >= 0, "negative exponent");
        let shift = SeriesPoly::monomial(Rat::one(), e as usize);
        for d in 1..=dmax {
            let carried = series_mul(&a[d - 1], &shift, bound);
            a[d] = a[d].add(&carried);
        }
    }
    a
}

fn fmt_rat(c: &Rat) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("({}/{})", c.numer(), c.denom())
    }
}

impl fmt::Display for SeriesPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{}", fmt_rat(&mag))?;
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{}", i)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::field::rat;

    #[test]
    fn product_truncation() {
        let a = SeriesPoly::from_ints(&[1, 1]); // 1 + t
        let b = SeriesPoly::from_ints(&[1, -1]); // 1 - t
        assert_eq!(a.mul(&b), SeriesPoly::from_ints(&[1, 0, -1]));
        assert_eq!(series_mul(&a, &b, 1), SeriesPoly::one());
    }

    #[test]
    fn binomial_inverse() {
        // (1-t)^4 * sum_d C(d+3,3) t^d = 1 + O(t^7)
        let mut pow = SeriesPoly::one();
        for _ in 0..4 {
            pow = pow.mul(&SeriesPoly::one_minus_t_pow(1));
        }
        let binom = |d: i64| (d + 1) * (d + 2) * (d + 3) / 6;
        let s = SeriesPoly::new((0..=6).map(|d| rat_int(binom(d))).collect());
        assert_eq!(series_mul(&pow, &s, 6), SeriesPoly::one());
    }

    #[test]
    fn exact_division_stages() {
        // quintic numerator over a 3-fold vanishing: value at t=1 is 5
        let n = SeriesPoly::from_ints(&[1, 0, -5, 5, 0, -1]);
        let q = n.divide_by_one_minus_t(3).unwrap();
        assert_eq!(q.eval_at_one(), rat_int(5));
        // and the division is exact
        let mut back = q;
        for _ in 0..3 {
            back = back.mul(&SeriesPoly::one_minus_t_pow(1));
        }
        assert_eq!(back, n);
    }

    #[test]
    fn not_divisible() {
        let p = SeriesPoly::from_ints(&[1, 0, 0, -1]); // 1 - t^3
        assert_eq!(
            p.divide_by_one_minus_t(2),
            Err(SeriesError::NotDivisible { stage: 1 })
        );
    }

    #[test]
    fn vanishing_order() {
        let p = SeriesPoly::from_ints(&[1, -1])
            .mul(&SeriesPoly::from_ints(&[1, -1]))
            .mul(&SeriesPoly::from_ints(&[1, 1]));
        assert_eq!(p.vanishing_order_at_one(10), 2);
        assert_eq!(SeriesPoly::from_ints(&[2]).vanishing_order_at_one(10), 0);
    }

    #[test]
    fn complete_homogeneous_small() {
        let e = |s: i64, o: i64| LinExpr::new(s, o);
        // h_2(1, 1, t) = 3 + 2t + t^2
        let h = complete_homogeneous(2, &[e(0, 0), e(0, 0), e(0, 1)], 5);
        assert_eq!(h, SeriesPoly::from_ints(&[3, 2, 1]));
        // h_1(t, t, t) = 3t
        let h = complete_homogeneous(1, &[e(0, 1), e(0, 1), e(0, 1)], 5);
        assert_eq!(h, SeriesPoly::from_ints(&[0, 3]));
        // h_0 = 1
        let h = complete_homogeneous(0, &[e(1, 0)], 5);
        assert_eq!(h, SeriesPoly::one());
    }

    #[test]
    fn reverse_symmetry() {
        // 1 - t reversed at s=1 is -(1 - t)
        let p = SeriesPoly::from_ints(&[1, -1]);
        assert_eq!(p.reverse(1).unwrap(), p.neg());
        // Segre numerator of P^2 x P^2 with all entry degrees 2 is symmetric
        let n = SeriesPoly::from_ints(&[1, 0, -9, 16, -9, 0, 1]);
        assert_eq!(n.reverse(6).unwrap(), n);
        assert!(n.reverse(3).is_none());
    }

    #[test]
    fn weighted_series_coefficient() {
        // 1/((1-t)^2 (1-t^3)): coefficient of t^5 is 9
        let s = series_mul(
            &series_mul(
                &SeriesPoly::geometric(1, 5),
                &SeriesPoly::geometric(1, 5),
                5,
            ),
            &SeriesPoly::geometric(3, 5),
            5,
        );
        assert_eq!(s.coeff(5), rat_int(9));
    }

    #[test]
    fn display_readable() {
        let n = SeriesPoly::from_ints(&[1, 0, -5, 5, 0, -1]);
        assert_eq!(n.to_string(), "1 - 5t^2 + 5t^3 - t^5");
        assert_eq!(SeriesPoly::zero().to_string(), "0");
        let q = SeriesPoly::new(vec![rat(1, 2), rat_int(-1)]);
        assert_eq!(q.to_string(), "(1/2) - t");
    }

    #[test]
    fn geometric_slices_agree_with_the_direct_sums() {
        let exps = [LinExpr::c(0), LinExpr::c(2), LinExpr::c(3)];
        let es = [0i64, 2, 3];
        let bound = 12;
        let slices = geometric_slices(&es, 6, bound);
        for (d, slice) in slices.iter().enumerate() {
            let direct = complete_homogeneous(d, &exps, 1).truncate(bound);
            assert_eq!(*slice, direct, "slice {d}");
        }
    }
}
