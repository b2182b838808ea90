//! Rational function field base(y) over any Field, as a Field itself, plus
//! exact gcd of bivariate polynomials (elements of base[y][z]) built on it.
//! Used to decide whether restricted equation systems share a curve component
//! on a coordinate plane: the one question where pure point-solving is not
//! enough.

use super::field::Field;
use super::unipoly;

/// Reduced fraction num/den of univariate polynomials: den monic and nonzero,
/// gcd(num, den) = 1, zero represented by an empty numerator. Canonical, so
/// derived equality is field equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frac<E: Clone + PartialEq + Eq + std::fmt::Debug> {
    pub num: Vec<E>,
    pub den: Vec<E>,
}

#[derive(Clone, Debug)]
pub struct FracField<F: Field> {
    pub base: F,
}

impl<F: Field> FracField<F> {
    pub fn new(base: F) -> Self {
        FracField { base }
    }

    fn reduce(&self, num: Vec<F::Elem>, den: Vec<F::Elem>) -> Frac<F::Elem> {
        let b = &self.base;
        assert!(!den.is_empty(), "zero denominator");
        if num.is_empty() {
            return Frac {
                num: vec![],
                den: vec![b.one()],
            };
        }
        let g = unipoly::gcd(b, &num, &den);
        let (mut num, mut den) = if unipoly::deg(&g) > 0 {
            (
                unipoly::divmod(b, &num, &g).0,
                unipoly::divmod(b, &den, &g).0,
            )
        } else {
            (num, den)
        };
        let lcinv = b.inv(den.last().unwrap()).expect("nonzero leading");
        num = unipoly::scale(b, &num, &lcinv);
        den = unipoly::scale(b, &den, &lcinv);
        Frac { num, den }
    }

    pub fn from_poly(&self, p: Vec<F::Elem>) -> Frac<F::Elem> {
        Frac {
            num: unipoly::trimmed(&self.base, p),
            den: vec![self.base.one()],
        }
    }
}

impl<F: Field> Field for FracField<F> {
    type Elem = Frac<F::Elem>;

    fn zero(&self) -> Self::Elem {
        Frac {
            num: vec![],
            den: vec![self.base.one()],
        }
    }
    fn one(&self) -> Self::Elem {
        Frac {
            num: vec![self.base.one()],
            den: vec![self.base.one()],
        }
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.num.is_empty()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.base;
        let n = unipoly::add(
            f,
            &unipoly::mul(f, &a.num, &b.den),
            &unipoly::mul(f, &b.num, &a.den),
        );
        self.reduce(n, unipoly::mul(f, &a.den, &b.den))
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        Frac {
            num: a.num.iter().map(|c| self.base.neg(c)).collect(),
            den: a.den.clone(),
        }
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.base;
        self.reduce(
            unipoly::mul(f, &a.num, &b.num),
            unipoly::mul(f, &a.den, &b.den),
        )
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.num.is_empty() {
            return None;
        }
        Some(self.reduce(a.den.clone(), a.num.clone()))
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        let c = self.base.from_i64(n);
        if self.base.is_zero(&c) {
            self.zero()
        } else {
            Frac {
                num: vec![c],
                den: vec![self.base.one()],
            }
        }
    }
}

/// Bivariate polynomial in base[y][z]: outer index is the z-degree, inner
/// vectors are y-polynomials. Trailing zero z-coefficients trimmed.
pub type Biv<E> = Vec<Vec<E>>;

pub fn biv_trim<F: Field>(f: &F, mut p: Biv<F::Elem>) -> Biv<F::Elem> {
    for c in p.iter_mut() {
        let t = unipoly::trimmed(f, std::mem::take(c));
        *c = t;
    }
    while p.last().map(|c| c.is_empty()) == Some(true) {
        p.pop();
    }
    p
}

pub fn biv_is_zero<E>(p: &Biv<E>) -> bool {
    p.is_empty()
}

/// y-content of a bivariate: the univariate gcd of its z-coefficients.
fn biv_content<F: Field>(f: &F, p: &Biv<F::Elem>) -> Vec<F::Elem> {
    let mut c: Vec<F::Elem> = vec![];
    for coeff in p {
        if coeff.is_empty() {
            continue;
        }
        c = unipoly::gcd(f, &c, coeff);
        if unipoly::deg(&c) == 0 {
            break;
        }
    }
    c
}

/// Divide out the y-content, leaving the primitive part.
fn biv_primitive<F: Field>(f: &F, p: Biv<F::Elem>) -> Biv<F::Elem> {
    let c = biv_content(f, &p);
    if unipoly::deg(&c) <= 0 {
        return p;
    }
    p.into_iter()
        .map(|coeff| {
            if coeff.is_empty() {
                coeff
            } else {
                unipoly::divmod(f, &coeff, &c).0
            }
        })
        .collect()
}

/// Pseudo-remainder of a by b in base[y][z]: lc(b)^k a mod b for the smallest
/// sufficient k, computed without fractions. Requires deg_z(a) >= deg_z(b).
fn biv_pseudo_rem<F: Field>(f: &F, a: &Biv<F::Elem>, b: &Biv<F::Elem>) -> Biv<F::Elem> {
    let db = b.len() - 1;
    let lb = b.last().expect("divisor nonzero");
    let mut r = a.clone();
    while !biv_is_zero(&r) && r.len() - 1 >= db {
        let dr = r.len() - 1;
        let lr = r.last().unwrap().clone();
        // r <- lb * r - lr * z^(dr - db) * b; the top z-terms cancel
        let mut next: Biv<F::Elem> = r
            .iter()
            .map(|c| unipoly::mul(f, c, lb))
            .collect();
        for (i, c) in b.iter().enumerate() {
            let k = i + dr - db;
            let t = unipoly::mul(f, c, &lr);
            next[k] = unipoly::sub(f, &next[k], &t);
        }
        r = biv_trim(f, next);
    }
    r
}

/// gcd of a and b in base(y)[z] via a primitive pseudo-remainder sequence:
/// y-content removed (primitive part), leading coefficient normalized monic
/// in y. The result divides both inputs in base[y][z] up to y-content.
pub fn biv_gcd_z<F: Field>(f: &F, a: &Biv<F::Elem>, b: &Biv<F::Elem>) -> Biv<F::Elem> {
    let a = biv_trim(f, a.clone());
    let b = biv_trim(f, b.clone());
    if biv_is_zero(&a) {
        return b;
    }
    if biv_is_zero(&b) {
        return a;
    }
    let mut r0 = biv_primitive(f, a);
    let mut r1 = biv_primitive(f, b);
    if r0.len() < r1.len() {
        std::mem::swap(&mut r0, &mut r1);
    }
    while !biv_is_zero(&r1) {
        let r2 = biv_primitive(f, biv_pseudo_rem(f, &r0, &r1));
        r0 = r1;
        r1 = r2;
    }
    // monic normalization of the top z-coefficient (a constant scale: the
    // primitive part is unique up to one)
    if let Some(top) = r0.last() {
        if let Some(lc) = top.last() {
            let inv = f.inv(lc).unwrap();
            return r0.iter().map(|c| unipoly::scale(f, c, &inv)).collect();
        }
    }
    r0
}

/// gcd over a whole family.
pub fn biv_gcd_many<F: Field>(f: &F, polys: &[Biv<F::Elem>]) -> Biv<F::Elem> {
    let mut g: Biv<F::Elem> = vec![];
    for p in polys {
        g = biv_gcd_z(f, &g, p);
        if !biv_is_zero(&g) && g.len() == 1 && unipoly::deg(&g[0]) <= 0 {
            break; // already constant
        }
    }
    g
}

/// Strip monomial factors y^a z^b; true if a non-monomial (non-unit) factor
/// remains. This is the "do the inputs share a curve through the torus"
/// answer when applied to their gcd.
pub fn biv_nonmonomial<F: Field>(f: &F, p: &Biv<F::Elem>) -> bool {
    let p = biv_trim(f, p.clone());
    if biv_is_zero(&p) {
        return false; // zero handled by callers
    }
    // strip z^b
    let zmin = p.iter().position(|c| !c.is_empty()).unwrap();
    let rest = &p[zmin..];
    // strip y^a: minimal y-valuation across coefficients
    let ymin = rest
        .iter()
        .filter(|c| !c.is_empty())
        .map(|c| c.iter().position(|e| !f.is_zero(e)).unwrap())
        .min()
        .unwrap();
    if rest.len() > 1 {
        return true; // genuine z-dependence beyond a monomial
    }
    unipoly::deg(&rest[0]) as usize > ymin
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::field::PrimeField;

    #[test]
    fn fraction_arithmetic_reduces() {
        let f = PrimeField::new(7);
        let ff = FracField::new(f);
        // (y^2 - 1)/(y - 1) = y + 1
        let a = ff.reduce(vec![6, 0, 1], vec![6, 1]);
        assert_eq!(a, ff.from_poly(vec![1, 1]));
        let inv = ff.inv(&a).unwrap();
        assert_eq!(ff.mul(&a, &inv), ff.one());
        assert_eq!(ff.add(&a, &ff.neg(&a)), ff.zero());
    }

    // build z-polys over F_p[y]: biv[k] = coefficient of z^k
    #[test]
    fn bivariate_gcd_extracts_common_curve() {
        let f = PrimeField::new(101);
        // a = (z - y)(z + y^2), b = (z - y)(z + 1)
        let a: Biv<u64> = {
            // z^2 + (y^2 - y) z - y^3
            vec![
                vec![0, 0, 0, f.neg(&1)], // -y^3
                vec![0, f.neg(&1), 1],    // y^2 - y
                vec![1],
            ]
        };
        let b: Biv<u64> = {
            // z^2 + (1 - y) z - y
            vec![vec![0, f.neg(&1)], vec![1, f.neg(&1)], vec![1]]
        };
        let g = biv_gcd_z(&f, &a, &b);
        // z - y, normalized
        assert_eq!(g, vec![vec![0, f.neg(&1)], vec![1]]);
        assert!(biv_nonmonomial(&f, &g));
    }

    #[test]
    fn coprime_bivariate() {
        let f = PrimeField::new(101);
        let a: Biv<u64> = vec![vec![0, 1], vec![1]]; // z + y
        let b: Biv<u64> = vec![vec![1], vec![1]]; // z + 1
        let g = biv_gcd_z(&f, &a, &b);
        assert!(!biv_nonmonomial(&f, &g));
        assert_eq!(g.len(), 1);
    }

    #[test]
    fn monomial_stripping() {
        let f = PrimeField::new(101);
        // y^2 z is a monomial: no curve through the torus
        let m: Biv<u64> = vec![vec![], vec![0, 0, 1]];
        assert!(!biv_nonmonomial(&f, &m));
        // y z (y + z): not a monomial
        let p: Biv<u64> = vec![vec![], vec![0, 0, 1], vec![0, 1]];
        assert!(biv_nonmonomial(&f, &p));
    }

    #[test]
    fn gcd_many_short_circuits() {
        let f = PrimeField::new(101);
        let polys: Vec<Biv<u64>> = vec![
            vec![vec![0, 1], vec![1]],       // z + y
            vec![vec![1], vec![1]],          // z + 1
            vec![vec![0, 0, 1], vec![0, 1]], // y^2 + yz
        ];
        let g = biv_gcd_many(&f, &polys);
        assert!(!biv_nonmonomial(&f, &g));
    }
}
