//! Sparse multivariate polynomials over a Field context. The variable names
//! and (positive integer) weights live in a separate ring descriptor that is
//! passed where needed; polynomial data is just an exponent-map. Instances
//! have few variables (<= 7) but weighted degrees up to ~40, so sparse
//! storage is the only sane choice.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::field::{Field, FiniteField};
use super::rng::Rng;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("WeightMismatch: substitution of a degree-{got:?} form for a weight-{want} variable")]
    WeightMismatch { want: i64, got: Option<i64> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    pub names: Vec<String>,
    pub weights: Vec<i64>,
}

impl PolyRing {
    pub fn new(names: &[&str], weights: &[i64]) -> Self {
        assert_eq!(names.len(), weights.len());
        assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
        PolyRing {
            names: names.iter().map(|s| s.to_string()).collect(),
            weights: weights.to_vec(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn weighted_degree(&self, exps: &[u16]) -> i64 {
        exps.iter()
            .zip(&self.weights)
            .map(|(&e, &w)| i64::from(e) * w)
            .sum()
    }

    /// All exponent vectors of weighted degree exactly d.
    pub fn monomials_of_degree(&self, d: i64) -> Vec<Vec<u16>> {
        let mut out = vec![];
        let mut cur = vec![0u16; self.nvars()];
        fn go(ws: &[i64], rem: i64, idx: usize, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
            if idx == ws.len() {
                if rem == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            let w = ws[idx];
            let max = rem / w;
            for e in 0..=max {
                cur[idx] = e as u16;
                go(ws, rem - e * w, idx + 1, cur, out);
            }
            cur[idx] = 0;
        }
        if d >= 0 {
            go(&self.weights, d, 0, &mut cur, &mut out);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly<F: Field> {
    terms: BTreeMap<Vec<u16>, F::Elem>,
}

impl<F: Field> MultiPoly<F> {
    pub fn zero() -> Self {
        MultiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn monomial(f: &F, exps: Vec<u16>, c: F::Elem) -> Self {
        let mut p = MultiPoly::zero();
        if !f.is_zero(&c) {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn constant(f: &F, c: F::Elem, nvars: usize) -> Self {
        MultiPoly::monomial(f, vec![0; nvars], c)
    }

    pub fn var(f: &F, ring: &PolyRing, i: usize) -> Self {
        let mut exps = vec![0u16; ring.nvars()];
        exps[i] = 1;
        MultiPoly::monomial(f, exps, f.one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u16>, &F::Elem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff_of(&self, f: &F, exps: &[u16]) -> F::Elem {
        self.terms.get(exps).cloned().unwrap_or_else(|| f.zero())
    }

    fn insert_add(&mut self, f: &F, exps: Vec<u16>, c: F::Elem) {
        if f.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(old) => {
                let s = f.add(old, &c);
                if f.is_zero(&s) {
                    self.terms.remove(&exps);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn add(&self, f: &F, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(f, e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self, f: &F) -> Self {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), f.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, f: &F, other: &Self) -> Self {
        self.add(f, &other.neg(f))
    }

    pub fn scale(&self, f: &F, c: &F::Elem) -> Self {
        if f.is_zero(c) {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.clone(), f.mul(x, c)))
                .collect(),
        }
    }

    pub fn mul(&self, f: &F, other: &Self) -> Self {
        let mut out = MultiPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u16> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert_add(f, exps, f.mul(ca, cb));
            }
        }
        out
    }

    pub fn mul_var(&self, i: usize) -> Self {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = e.clone();
                    e2[i] += 1;
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    /// Exact division by the variable x_i; None when some term misses it.
    pub fn div_var(&self, i: usize) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                return None;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            terms.insert(e2, c.clone());
        }
        Some(MultiPoly { terms })
    }

    pub fn pow(&self, f: &F, e: usize) -> Self {
        let nv = self.terms.keys().next().map(|k| k.len()).unwrap_or(0);
        let mut acc = MultiPoly::constant(f, f.one(), nv);
        for _ in 0..e {
            acc = acc.mul(f, self);
        }
        acc
    }

    pub fn eval(&self, f: &F, point: &[F::Elem]) -> F::Elem {
        let mut acc = f.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &exp) in e.iter().enumerate() {
                for _ in 0..exp {
                    t = f.mul(&t, &point[i]);
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    pub fn partial(&self, f: &F, i: usize) -> Self {
        let mut out = MultiPoly::zero();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.insert_add(f, e2, f.mul(c, &f.from_i64(i64::from(e[i]))));
        }
        out
    }

    /// Set every variable outside `keep` to zero.
    pub fn restrict(&self, keep: &[usize]) -> Self {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| {
                    e.iter()
                        .enumerate()
                        .all(|(i, &exp)| exp == 0 || keep.contains(&i))
                })
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Common degree of all terms; Ok(None) for the zero polynomial, Err on a
    /// non-homogeneous polynomial (reports the two clashing degrees).
    pub fn homogeneous_degree(&self, ring: &PolyRing) -> Result<Option<i64>, (i64, i64)> {
        let mut seen: Option<i64> = None;
        for e in self.terms.keys() {
            let d = ring.weighted_degree(e);
            match seen {
                None => seen = Some(d),
                Some(s) if s != d => return Err((s, d)),
                _ => {}
            }
        }
        Ok(seen)
    }

    /// Replace x_var by g (same ring). g must be weighted-homogeneous of the
    /// variable's weight, or constant zero.
    pub fn substitute(
        &self,
        f: &F,
        ring: &PolyRing,
        var: usize,
        g: &Self,
    ) -> Result<Self, PolyError> {
        let want = ring.weights[var];
        match g.homogeneous_degree(ring) {
            Ok(None) => {}
            Ok(Some(d)) if d == want => {}
            Ok(Some(d)) => {
                return Err(PolyError::WeightMismatch {
                    want,
                    got: Some(d),
                })
            }
            Err(_) => return Err(PolyError::WeightMismatch { want, got: None }),
        }
        let max_e = self
            .terms
            .keys()
            .map(|e| e[var])
            .max()
            .unwrap_or(0) as usize;
        let nv = ring.nvars();
        let mut powers: Vec<MultiPoly<F>> = vec![MultiPoly::constant(f, f.one(), nv)];
        for e in 1..=max_e {
            powers.push(powers[e - 1].mul(f, g));
        }
        let mut out = MultiPoly::zero();
        for (e, c) in &self.terms {
            let mut stripped = e.clone();
            let k = stripped[var] as usize;
            stripped[var] = 0;
            let base = MultiPoly::monomial(f, stripped, c.clone());
            out = out.add(f, &base.mul(f, &powers[k]));
        }
        Ok(out)
    }

    /// Map coefficients into another field (e.g. Q -> F_p on integral input).
    pub fn map_coeffs<G: Field>(
        &self,
        g: &G,
        map: impl Fn(&F::Elem) -> G::Elem,
    ) -> MultiPoly<G> {
        let mut out = MultiPoly::zero();
        for (e, c) in &self.terms {
            let mc = map(c);
            if !g.is_zero(&mc) {
                out.terms.insert(e.clone(), mc);
            }
        }
        out
    }

    pub fn show(&self, ring: &PolyRing) -> String
    where
        F::Elem: fmt::Display,
    {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = vec![];
        for (e, c) in self.terms.iter().rev() {
            let mut vars = vec![];
            for (i, &exp) in e.iter().enumerate() {
                match exp {
                    0 => {}
                    1 => vars.push(ring.names[i].clone()),
                    _ => vars.push(format!("{}^{}", ring.names[i], exp)),
                }
            }
            let cs = c.to_string();
            let body = if vars.is_empty() {
                cs
            } else if cs == "1" {
                vars.join("*")
            } else {
                format!("{}*{}", cs, vars.join("*"))
            };
            parts.push(body);
        }
        parts.join(" + ")
    }
}

/// Dense generic form of weighted degree d: every monomial of that degree,
/// each with a nonzero sampled coefficient.
pub fn random_form<F: FiniteField>(
    f: &F,
    ring: &PolyRing,
    d: i64,
    rng: &mut Rng,
) -> MultiPoly<F> {
    let mut out = MultiPoly::zero();
    for e in ring.monomials_of_degree(d) {
        out.terms.insert(e, f.sample_nonzero(rng));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::field::{rat_int, PrimeField, RationalField};

    fn ring113() -> PolyRing {
        PolyRing::new(&["x", "y", "z"], &[1, 1, 3])
    }

    #[test]
    fn monomial_count_weighted() {
        // degree 5 in weights (1,1,3): 6 with z^0 and 3 with z^1
        let r = ring113();
        assert_eq!(r.monomials_of_degree(5).len(), 9);
        assert_eq!(r.monomials_of_degree(0).len(), 1);
        assert_eq!(r.monomials_of_degree(-2).len(), 0);
    }

    #[test]
    fn arithmetic_over_q() {
        let q = RationalField;
        let r = ring113();
        let x = MultiPoly::var(&q, &r, 0);
        let y = MultiPoly::var(&q, &r, 1);
        let p = x.add(&q, &y).mul(&q, &x.sub(&q, &y));
        let x2 = x.mul(&q, &x);
        let y2 = y.mul(&q, &y);
        assert_eq!(p, x2.sub(&q, &y2));
        assert_eq!(p.homogeneous_degree(&r), Ok(Some(2)));
        assert_eq!(
            p.eval(&q, &[rat_int(3), rat_int(2), rat_int(0)]),
            rat_int(5)
        );
    }

    #[test]
    fn substitution_checks_weights() {
        let q = RationalField;
        let r = ring113();
        let x = MultiPoly::var(&q, &r, 0);
        let y = MultiPoly::var(&q, &r, 1);
        let z = MultiPoly::var(&q, &r, 2);
        let f = x.mul(&q, &z); // degree 4
        // substitute z := x^2 y (degree 3): ok
        let g = x.mul(&q, &x).mul(&q, &y);
        let s = f.substitute(&q, &r, 2, &g).unwrap();
        assert_eq!(s, x.mul(&q, &x).mul(&q, &x).mul(&q, &y));
        assert_eq!(s.homogeneous_degree(&r), Ok(Some(4)));
        // substitute z := x (degree 1): weight mismatch
        assert!(matches!(
            f.substitute(&q, &r, 2, &x),
            Err(PolyError::WeightMismatch { want: 3, got: Some(1) })
        ));
    }

    #[test]
    fn partial_derivative() {
        let q = RationalField;
        let r = ring113();
        let x = MultiPoly::var(&q, &r, 0);
        let y = MultiPoly::var(&q, &r, 1);
        // d/dx (x^3 + 2xy) = 3x^2 + 2y
        let p = x.pow(&q, 3).add(&q, &x.mul(&q, &y).scale(&q, &rat_int(2)));
        let expect = x
            .pow(&q, 2)
            .scale(&q, &rat_int(3))
            .add(&q, &y.scale(&q, &rat_int(2)));
        assert_eq!(p.partial(&q, 0), expect);
    }

    #[test]
    fn restriction_and_var_division() {
        let q = RationalField;
        let r = ring113();
        let x = MultiPoly::var(&q, &r, 0);
        let y = MultiPoly::var(&q, &r, 1);
        let p = x.mul(&q, &y).add(&q, &y.mul(&q, &y));
        assert_eq!(p.restrict(&[1]), y.mul(&q, &y));
        assert_eq!(p.div_var(1).unwrap(), x.add(&q, &y));
        assert_eq!(p.div_var(0), None);
    }

    #[test]
    fn random_form_is_dense_generic() {
        let f = PrimeField::new(10007);
        let r = ring113();
        let mut rng = Rng::keyed(42, &["test"]);
        let p = random_form(&f, &r, 5, &mut rng);
        assert_eq!(p.num_terms(), 9);
        assert_eq!(p.homogeneous_degree(&r), Ok(Some(5)));
        // determinism
        let mut rng2 = Rng::keyed(42, &["test"]);
        assert_eq!(random_form(&f, &r, 5, &mut rng2), p);
    }

    #[test]
    fn display_names() {
        let q = RationalField;
        let r = ring113();
        let x = MultiPoly::var(&q, &r, 0);
        let z = MultiPoly::var(&q, &r, 2);
        let p = x.pow(&q, 2).scale(&q, &rat_int(3)).add(&q, &z.neg(&q));
        assert_eq!(p.show(&r), "3*x^2 + -1*z");
    }
}
