//! Field contexts. Elements are plain data and the context owns the
//! arithmetic, so prime fields run at machine-word cost while the same
//! generic polynomial / linear-algebra / factorization code also runs over Q
//! and over quotient extensions F_p[x]/(g).

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::rng::Rng;

pub trait Field: Clone {
    type Elem: Clone + PartialEq + Eq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// None exactly on zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

pub trait FiniteField: Field {
    fn characteristic(&self) -> u64;
    fn order(&self) -> u128;
    fn sample(&self, rng: &mut Rng) -> Self::Elem;

    fn sample_nonzero(&self, rng: &mut Rng) -> Self::Elem {
        loop {
            let x = self.sample(rng);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }
}

// ---------------------------------------------------------------- prime field

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        debug_assert!(p >= 2);
        PrimeField { p }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((u128::from(*a) + u128::from(*b)) % u128::from(self.p)) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.add(a, &self.neg(b))
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((u128::from(*a) * u128::from(*b)) % u128::from(self.p)) as u64
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // extended Euclid over signed 128-bit
        let (mut r0, mut r1) = (i128::from(self.p), i128::from(*a));
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1, "modulus must be prime");
        let p = i128::from(self.p);
        Some((((s0 % p) + p) % p) as u64)
    }
    fn from_i64(&self, n: i64) -> u64 {
        let p = i128::from(self.p);
        (((i128::from(n) % p) + p) % p) as u64
    }
}

impl FiniteField for PrimeField {
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn order(&self) -> u128 {
        u128::from(self.p)
    }
    fn sample(&self, rng: &mut Rng) -> u64 {
        rng.below(self.p)
    }
}

// ------------------------------------------------------------------ rationals

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(n.into(), d.into())
}

pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(n.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = Rat;

    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn one(&self) -> Rat {
        Rat::one()
    }
    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a + b
    }
    fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        a - b
    }
    fn neg(&self, a: &Rat) -> Rat {
        -a
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a * b
    }
    fn inv(&self, a: &Rat) -> Option<Rat> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, n: i64) -> Rat {
        rat_int(n)
    }
}

// ------------------------------------------------- quotient extension F[x]/(g)

/// F[x]/(modulus) for a monic irreducible modulus of degree >= 1. Elements
/// are coefficient vectors of fixed length deg(modulus), low degree first, so
/// equality of representations is equality in the field.
///
/// Irreducibility is the caller's responsibility (moduli come out of the
/// factorizer); a reducible modulus surfaces as `inv` panicking on a zero
/// divisor in debug builds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtField<F: Field> {
    pub base: F,
    modulus: Vec<F::Elem>,
}

impl<F: Field> ExtField<F> {
    /// modulus: coefficients low to high, monic, degree >= 1.
    pub fn new(base: F, modulus: Vec<F::Elem>) -> Self {
        assert!(modulus.len() >= 2, "extension degree must be >= 1");
        assert!(
            modulus.last().map(|c| *c == base.one()) == Some(true),
            "modulus must be monic"
        );
        ExtField { base, modulus }
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[F::Elem] {
        &self.modulus
    }

    /// The class of x, a root of the modulus.
    pub fn generator(&self) -> Vec<F::Elem> {
        let mut v = vec![self.base.zero(); self.degree()];
        if self.degree() == 1 {
            // x = -modulus[0] in a degree-1 "extension"
            v[0] = self.base.neg(&self.modulus[0]);
        } else {
            v[1] = self.base.one();
        }
        v
    }

    /// Embed a base-field element.
    pub fn embed(&self, a: F::Elem) -> Vec<F::Elem> {
        let mut v = vec![self.base.zero(); self.degree()];
        v[0] = a;
        v
    }

    fn pad(&self, mut v: Vec<F::Elem>) -> Vec<F::Elem> {
        // reduce mod the monic modulus, then pad to fixed length
        let d = self.degree();
        let f = &self.base;
        let mut i = v.len();
        while i > d {
            i -= 1;
            if f.is_zero(&v[i]) {
                continue;
            }
            let c = v[i].clone();
            v[i] = f.zero();
            for (j, m) in self.modulus.iter().enumerate().take(d) {
                let t = f.mul(&c, m);
                v[i - d + j] = f.sub(&v[i - d + j], &t);
            }
        }
        v.resize(d, f.zero());
        v
    }
}

impl<F: Field> Field for ExtField<F> {
    type Elem = Vec<F::Elem>;

    fn zero(&self) -> Vec<F::Elem> {
        vec![self.base.zero(); self.degree()]
    }
    fn one(&self) -> Vec<F::Elem> {
        self.embed(self.base.one())
    }
    fn is_zero(&self, a: &Vec<F::Elem>) -> bool {
        a.iter().all(|c| self.base.is_zero(c))
    }
    fn add(&self, a: &Vec<F::Elem>, b: &Vec<F::Elem>) -> Vec<F::Elem> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn sub(&self, a: &Vec<F::Elem>, b: &Vec<F::Elem>) -> Vec<F::Elem> {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }
    fn neg(&self, a: &Vec<F::Elem>) -> Vec<F::Elem> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Vec<F::Elem>, b: &Vec<F::Elem>) -> Vec<F::Elem> {
        let f = &self.base;
        let d = self.degree();
        let mut prod = vec![f.zero(); 2 * d.max(1)];
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if f.is_zero(y) {
                    continue;
                }
                let t = f.mul(x, y);
                prod[i + j] = f.add(&prod[i + j], &t);
            }
        }
        self.pad(prod)
    }
    fn inv(&self, a: &Vec<F::Elem>) -> Option<Vec<F::Elem>> {
        if self.is_zero(a) {
            return None;
        }
        // extended Euclid in base[x]: u*a + v*modulus = g, g a unit
        let f = &self.base;
        let trim = |mut v: Vec<F::Elem>| {
            while v.last().map(|c| f.is_zero(c)) == Some(true) {
                v.pop();
            }
            v
        };
        let mut r0 = self.modulus.clone();
        let mut r1 = trim(a.clone());
        let mut s0: Vec<F::Elem> = vec![];
        let mut s1 = vec![f.one()];
        while !r1.is_empty() {
            // r0 = q*r1 + r2 by long division (lc(r1) invertible over a field)
            let lc = f.inv(r1.last().unwrap()).expect("nonzero lead");
            let mut rem = r0.clone();
            let mut q: Vec<F::Elem> = vec![f.zero(); rem.len().saturating_sub(r1.len() - 1)];
            while rem.len() >= r1.len() && !rem.is_empty() {
                let shift = rem.len() - r1.len();
                let c = f.mul(rem.last().unwrap(), &lc);
                if !f.is_zero(&c) {
                    q[shift] = f.add(&q[shift], &c);
                    for (j, m) in r1.iter().enumerate() {
                        let t = f.mul(&c, m);
                        rem[shift + j] = f.sub(&rem[shift + j], &t);
                    }
                }
                rem = trim(rem);
                if rem.len() < r1.len() {
                    break;
                }
            }
            let q = trim(q);
            // s2 = s0 - q*s1
            let mut qs = vec![f.zero(); q.len() + s1.len()];
            for (i, x) in q.iter().enumerate() {
                for (j, y) in s1.iter().enumerate() {
                    let t = f.mul(x, y);
                    qs[i + j] = f.add(&qs[i + j], &t);
                }
            }
            let n = s0.len().max(qs.len());
            let mut s2 = vec![f.zero(); n];
            for (i, c) in s2.iter_mut().enumerate() {
                let a0 = s0.get(i).cloned().unwrap_or_else(|| f.zero());
                let b0 = qs.get(i).cloned().unwrap_or_else(|| f.zero());
                *c = f.sub(&a0, &b0);
            }
            r0 = r1;
            r1 = trim(rem);
            s0 = s1;
            s1 = trim(s2);
        }
        assert!(
            r0.len() == 1,
            "zero divisor: modulus not irreducible over base"
        );
        let g_inv = f.inv(&r0[0]).unwrap();
        let u: Vec<F::Elem> = s0.iter().map(|c| f.mul(c, &g_inv)).collect();
        Some(self.pad(u))
    }
    fn from_i64(&self, n: i64) -> Vec<F::Elem> {
        self.embed(self.base.from_i64(n))
    }
}

impl<F: FiniteField> FiniteField for ExtField<F> {
    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
    fn order(&self) -> u128 {
        let mut o: u128 = 1;
        for _ in 0..self.degree() {
            o = o.checked_mul(self.base.order()).expect("field order overflow");
        }
        o
    }
    fn sample(&self, rng: &mut Rng) -> Vec<F::Elem> {
        (0..self.degree()).map(|_| self.base.sample(rng)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_ops() {
        let f = PrimeField::new(10007);
        let a = f.from_i64(-3);
        assert_eq!(a, 10004);
        let b = f.from_i64(5);
        assert_eq!(f.mul(&a, &b), f.from_i64(-15));
        let ai = f.inv(&a).unwrap();
        assert_eq!(f.mul(&a, &ai), 1);
        assert_eq!(f.inv(&0), None);
    }

    #[test]
    fn prime_field_small() {
        let f = PrimeField::new(7);
        for a in 1..7u64 {
            let ai = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &ai), 1);
        }
        assert_eq!(f.sub(&2, &5), 4);
    }

    #[test]
    fn f9_is_a_field() {
        // F_3[x]/(x^2 + 1): x^2 = -1
        let f3 = PrimeField::new(3);
        let f9 = ExtField::new(f3, vec![1, 0, 1]);
        let x = f9.generator();
        assert_eq!(f9.mul(&x, &x), f9.from_i64(-1));
        // every nonzero element invertible
        let mut count = 0;
        for a0 in 0..3u64 {
            for a1 in 0..3u64 {
                let e = vec![a0, a1];
                if f9.is_zero(&e) {
                    assert_eq!(f9.inv(&e), None);
                    continue;
                }
                let ei = f9.inv(&e).unwrap();
                assert_eq!(f9.mul(&e, &ei), f9.one());
                count += 1;
            }
        }
        assert_eq!(count, 8);
        assert_eq!(f9.order(), 9);
        assert_eq!(f9.characteristic(), 3);
    }

    #[test]
    fn tower_depth_two() {
        // F_9[y]/(y^2 - x) where x generates F_9 over F_3; |F_81| = 81
        let f3 = PrimeField::new(3);
        let f9 = ExtField::new(f3, vec![1, 0, 1]);
        let x = f9.generator();
        let f81 = ExtField::new(f9.clone(), vec![f9.neg(&x), f9.zero(), f9.one()]);
        let y = f81.generator();
        assert_eq!(f81.mul(&y, &y), f81.embed(x));
        let yi = f81.inv(&y).unwrap();
        assert_eq!(f81.mul(&y, &yi), f81.one());
        assert_eq!(f81.order(), 81);
    }

    #[test]
    fn rational_field_exact() {
        let q = RationalField;
        let a = rat(25, 3);
        let b = rat(-1, 3);
        assert_eq!(q.add(&a, &b), rat_int(8));
        assert_eq!(q.mul(&a, &q.inv(&a).unwrap()), q.one());
    }
}
