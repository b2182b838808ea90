//! Dense univariate polynomials over an arbitrary Field context, as plain
//! coefficient vectors (low degree first, trailing zeros trimmed; empty =
//! zero). Supplies the division/gcd/resultant layer plus squarefree
//! factorization over finite fields (distinct-degree then randomized
//! equal-degree splitting, seeded and deterministic).

use num_bigint::BigUint;
use num_traits::One;

use super::field::{Field, FiniteField};
use super::rng::Rng;

pub fn trimmed<F: Field>(f: &F, mut v: Vec<F::Elem>) -> Vec<F::Elem> {
    while v.last().map(|c| f.is_zero(c)) == Some(true) {
        v.pop();
    }
    v
}

/// -1 for the zero polynomial.
pub fn deg<T>(v: &[T]) -> isize {
    v.len() as isize - 1
}

pub fn constant<F: Field>(f: &F, c: F::Elem) -> Vec<F::Elem> {
    trimmed(f, vec![c])
}

pub fn x_poly<F: Field>(f: &F) -> Vec<F::Elem> {
    vec![f.zero(), f.one()]
}

pub fn add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let v = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(|| f.zero());
            let y = b.get(i).cloned().unwrap_or_else(|| f.zero());
            f.add(&x, &y)
        })
        .collect();
    trimmed(f, v)
}

pub fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let v = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(|| f.zero());
            let y = b.get(i).cloned().unwrap_or_else(|| f.zero());
            f.sub(&x, &y)
        })
        .collect();
    trimmed(f, v)
}

pub fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut v = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let t = f.mul(x, y);
            v[i + j] = f.add(&v[i + j], &t);
        }
    }
    trimmed(f, v)
}

pub fn scale<F: Field>(f: &F, a: &[F::Elem], c: &F::Elem) -> Vec<F::Elem> {
    trimmed(f, a.iter().map(|x| f.mul(x, c)).collect())
}

pub fn eval<F: Field>(f: &F, a: &[F::Elem], x: &F::Elem) -> F::Elem {
    let mut acc = f.zero();
    for c in a.iter().rev() {
        acc = f.add(&f.mul(&acc, x), c);
    }
    acc
}

pub fn derivative<F: Field>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    if a.len() <= 1 {
        return vec![];
    }
    let v = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| f.mul(&f.from_i64(i as i64), c))
        .collect();
    trimmed(f, v)
}

/// Long division; b must be nonzero.
pub fn divmod<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let lcinv = f.inv(b.last().unwrap()).expect("nonzero leading coeff");
    let mut rem: Vec<F::Elem> = a.to_vec();
    if rem.len() < b.len() {
        return (vec![], trimmed(f, rem));
    }
    let qlen = rem.len() - b.len() + 1;
    let mut q = vec![f.zero(); qlen];
    for shift in (0..qlen).rev() {
        let c = f.mul(&rem[shift + b.len() - 1], &lcinv);
        if f.is_zero(&c) {
            continue;
        }
        q[shift] = c.clone();
        for (j, m) in b.iter().enumerate() {
            let t = f.mul(&c, m);
            rem[shift + j] = f.sub(&rem[shift + j], &t);
        }
    }
    rem.truncate(b.len() - 1);
    (trimmed(f, q), trimmed(f, rem))
}

pub fn rem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    divmod(f, a, b).1
}

pub fn monic<F: Field>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    match a.last() {
        None => vec![],
        Some(lc) => {
            let inv = f.inv(lc).expect("nonzero leading coeff");
            scale(f, a, &inv)
        }
    }
}

/// Monic gcd.
pub fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    while !r1.is_empty() {
        let r2 = rem(f, &r0, &r1);
        r0 = r1;
        r1 = r2;
    }
    monic(f, &r0)
}

pub fn mul_mod<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem], m: &[F::Elem]) -> Vec<F::Elem> {
    rem(f, &mul(f, a, b), m)
}

pub fn pow_mod<F: Field>(f: &F, base: &[F::Elem], e: &BigUint, m: &[F::Elem]) -> Vec<F::Elem> {
    let bytes = e.to_bytes_le();
    let mut result = constant(f, f.one());
    let mut acc = rem(f, base, m);
    for byte in bytes {
        for bit in 0..8 {
            if (byte >> bit) & 1 == 1 {
                result = mul_mod(f, &result, &acc, m);
            }
            acc = mul_mod(f, &acc, &acc, m);
        }
    }
    result
}

/// f / gcd(f, f'). Requires deg(f) < characteristic so perfect p-th powers
/// cannot occur.
pub fn squarefree_part<F: FiniteField>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    assert!(
        (deg(a).max(0) as u64) < f.characteristic(),
        "degree must be below the characteristic"
    );
    if deg(a) <= 0 {
        return monic(f, a);
    }
    let d = derivative(f, a);
    let g = gcd(f, a, &d);
    monic(f, &divmod(f, a, &g).0)
}

fn distinct_degree<F: FiniteField>(f: &F, a: &[F::Elem]) -> Vec<(Vec<F::Elem>, usize)> {
    // a monic squarefree; returns (product of irreducibles of degree d, d)
    let q = BigUint::from(f.order());
    let mut out = vec![];
    let mut cur = a.to_vec();
    let mut h = x_poly(f); // x^(q^d) mod cur, iterated
    let mut d = 0usize;
    while deg(&cur) > 0 {
        d += 1;
        if 2 * d > deg(&cur) as usize {
            out.push((cur.clone(), deg(&cur) as usize));
            break;
        }
        h = pow_mod(f, &h, &q, &cur);
        let g = gcd(f, &sub(f, &h, &x_poly(f)), &cur);
        if deg(&g) > 0 {
            out.push((g.clone(), d));
            cur = divmod(f, &cur, &g).0;
            h = rem(f, &h, &cur);
        }
    }
    out
}

fn equal_degree_split<F: FiniteField>(
    f: &F,
    a: &[F::Elem],
    d: usize,
    rng: &mut Rng,
    out: &mut Vec<Vec<F::Elem>>,
) {
    // a monic squarefree, all irreducible factors of degree d
    if deg(a) as usize == d {
        out.push(a.to_vec());
        return;
    }
    assert!(f.characteristic() % 2 == 1, "odd characteristic only");
    let q = BigUint::from(f.order());
    let e = (q.pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
    loop {
        let u: Vec<F::Elem> = trimmed(
            f,
            (0..deg(a) as usize).map(|_| f.sample(rng)).collect(),
        );
        if deg(&u) < 1 {
            continue;
        }
        let g1 = gcd(f, &u, a);
        let g = if deg(&g1) > 0 && deg(&g1) < deg(a) {
            g1
        } else {
            let w = pow_mod(f, &u, &e, a);
            let g = gcd(f, &sub(f, &w, &constant(f, f.one())), a);
            if deg(&g) > 0 && deg(&g) < deg(a) {
                g
            } else {
                continue;
            }
        };
        let h = divmod(f, a, &g).0;
        equal_degree_split(f, &g, d, rng, out);
        equal_degree_split(f, &h, d, rng, out);
        return;
    }
}

/// Full factorization into monic irreducibles with multiplicities, plus the
/// leading coefficient. Deterministic for a fixed rng key. Requires deg <
/// characteristic (true for every caller: degrees are bounded by small
/// multiples of r, the prime is 10007 by default).
#[allow(clippy::type_complexity)]
pub fn factor<F: FiniteField>(
    f: &F,
    a: &[F::Elem],
    rng: &mut Rng,
) -> (F::Elem, Vec<(Vec<F::Elem>, usize)>) {
    assert!(!a.is_empty(), "cannot factor the zero polynomial");
    let lead = a.last().unwrap().clone();
    let am = monic(f, a);
    if deg(&am) == 0 {
        return (lead, vec![]);
    }
    let sf = squarefree_part(f, &am);
    let mut rng = rng.split("factor");
    let mut irr: Vec<Vec<F::Elem>> = vec![];
    for (prod, d) in distinct_degree(f, &sf) {
        equal_degree_split(f, &prod, d, &mut rng, &mut irr);
    }
    // canonical order: by degree, then by coefficient sampling order in debug fmt
    irr.sort_by_key(|p| (p.len(), format!("{:?}", p)));
    let mut out = vec![];
    for p in irr {
        let mut m = 0usize;
        let mut cur = am.clone();
        loop {
            let (q, r) = divmod(f, &cur, &p);
            if !r.is_empty() {
                break;
            }
            m += 1;
            cur = q;
        }
        debug_assert!(m >= 1);
        out.push((p, m));
    }
    (lead, out)
}

/// Roots in the field itself (from the degree-1 monic factors).
pub fn roots<F: FiniteField>(f: &F, a: &[F::Elem], rng: &mut Rng) -> Vec<F::Elem> {
    if a.is_empty() || deg(a) == 0 {
        return vec![];
    }
    let (_, factors) = factor(f, a, rng);
    factors
        .into_iter()
        .filter(|(p, _)| p.len() == 2)
        .map(|(p, _)| f.neg(&p[0]))
        .collect()
}

/// Resultant of a and b (Sylvester convention), by the Euclidean remainder
/// sequence.
pub fn resultant<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    let (m, n) = (deg(a), deg(b));
    if m < 0 || n < 0 {
        // res(f, 0) = 0 unless both constant-free cases below
        return f.zero();
    }
    if m == 0 {
        // res(c, b) = c^deg(b)
        return pow_elem(f, &a[0], n as usize);
    }
    if n == 0 {
        return pow_elem(f, &b[0], m as usize);
    }
    if n > m {
        let sign = if (m * n) % 2 == 1 {
            f.neg(&f.one())
        } else {
            f.one()
        };
        return f.mul(&sign, &resultant(f, b, a));
    }
    let r = rem(f, a, b);
    let k = deg(&r);
    if k < 0 {
        return f.zero();
    }
    let lc = b.last().unwrap();
    let sign = if (m * n) % 2 == 1 {
        f.neg(&f.one())
    } else {
        f.one()
    };
    let factor = pow_elem(f, lc, (m - k) as usize);
    f.mul(&f.mul(&sign, &factor), &resultant(f, b, &r))
}

fn pow_elem<F: Field>(f: &F, a: &F::Elem, e: usize) -> F::Elem {
    let mut acc = f.one();
    for _ in 0..e {
        acc = f.mul(&acc, a);
    }
    acc
}

/// Newton interpolation through (xs[i], ys[i]); xs must be distinct.
pub fn interpolate<F: Field>(f: &F, xs: &[F::Elem], ys: &[F::Elem]) -> Vec<F::Elem> {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    if n == 0 {
        return vec![];
    }
    // divided differences
    let mut dd: Vec<F::Elem> = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = f.sub(&dd[i], &dd[i - 1]);
            let den = f.sub(&xs[i], &xs[i - level]);
            dd[i] = f.div(&num, &den).expect("interpolation nodes must be distinct");
        }
    }
    // expand Newton form
    let mut poly = constant(f, dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        let lin = trimmed(f, vec![f.neg(&xs[i]), f.one()]);
        poly = add(f, &mul(f, &poly, &lin), &constant(f, dd[i].clone()));
    }
    poly
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::field::{ExtField, PrimeField};

    #[test]
    fn divmod_roundtrip() {
        let f = PrimeField::new(101);
        let a: Vec<u64> = vec![3, 0, 7, 2, 1]; // x^4 + 2x^3 + 7x^2 + 3
        let b: Vec<u64> = vec![5, 1, 2]; // 2x^2 + x + 5
        let (q, r) = divmod(&f, &a, &b);
        assert!(deg(&r) < deg(&b));
        assert_eq!(add(&f, &mul(&f, &q, &b), &r), a);
    }

    #[test]
    fn gcd_common_factor() {
        let f = PrimeField::new(7);
        // (x-1)(x-2) and (x-2)(x-3)
        let a = mul(&f, &[6, 1], &[5, 1]);
        let b = mul(&f, &[5, 1], &[4, 1]);
        assert_eq!(gcd(&f, &a, &b), vec![5, 1]); // monic x - 2
    }

    #[test]
    fn factor_over_f3_and_f5() {
        let mut rng = Rng::new(1);
        let f3 = PrimeField::new(3);
        let (_, fs) = factor(&f3, &[1, 0, 1], &mut rng); // x^2 + 1 irreducible mod 3
        assert_eq!(fs, vec![(vec![1, 0, 1], 1)]);

        let f5 = PrimeField::new(5);
        let mut rs = roots(&f5, &[1, 0, 1], &mut rng); // x^2 + 1 = (x-2)(x-3) mod 5
        rs.sort();
        assert_eq!(rs, vec![2, 3]);
    }

    #[test]
    fn factor_multiplicity() {
        let f = PrimeField::new(7);
        let mut rng = Rng::new(2);
        // 3 (x-1)^2 (x+1)
        let p = scale(
            &f,
            &mul(&f, &mul(&f, &[6, 1], &[6, 1]), &[1, 1]),
            &3,
        );
        let (lead, mut fs) = factor(&f, &p, &mut rng);
        assert_eq!(lead, 3);
        fs.sort_by_key(|(p, _)| p.clone());
        assert_eq!(fs, vec![(vec![1, 1], 1), (vec![6, 1], 2)]);
    }

    #[test]
    fn roots_of_x3_minus_x() {
        let f = PrimeField::new(5);
        let mut rng = Rng::new(3);
        let mut rs = roots(&f, &[0, 4, 0, 1], &mut rng); // x^3 - x
        rs.sort();
        assert_eq!(rs, vec![0, 1, 4]);
    }

    #[test]
    fn factor_over_extension() {
        // y^2 - x over F_9 (x a generator with x^2 = -1): x is a square in F_9*
        let f3 = PrimeField::new(3);
        let f9 = ExtField::new(f3, vec![1, 0, 1]);
        let x = f9.generator();
        let p = vec![f9.neg(&x), f9.zero(), f9.one()];
        let mut rng = Rng::new(4);
        let rs = roots(&f9, &p, &mut rng);
        assert_eq!(rs.len(), 2);
        for r in rs {
            assert_eq!(f9.mul(&r, &r), x);
        }
    }

    #[test]
    fn pow_mod_cyclic() {
        let f = PrimeField::new(3);
        let m = vec![1, 0, 1]; // x^2 + 1
        let e = BigUint::from(9u32);
        assert_eq!(pow_mod(&f, &x_poly(&f), &e, &m), x_poly(&f)); // x^9 = x in F_9
    }

    // determinant of the Sylvester matrix, as an independent oracle
    #[allow(clippy::needless_range_loop)]
    fn sylvester_det(f: &PrimeField, a: &[u64], b: &[u64]) -> u64 {
        let (m, n) = (deg(a) as usize, deg(b) as usize);
        let size = m + n;
        let mut mat = vec![vec![0u64; size]; size];
        for i in 0..n {
            for (j, c) in a.iter().rev().enumerate() {
                mat[i][i + j] = *c;
            }
        }
        for i in 0..m {
            for (j, c) in b.iter().rev().enumerate() {
                mat[n + i][i + j] = *c;
            }
        }
        // elimination
        let mut det = 1u64;
        for col in 0..size {
            let piv = (col..size).find(|&r| mat[r][col] != 0);
            let piv = match piv {
                None => return 0,
                Some(p) => p,
            };
            if piv != col {
                mat.swap(piv, col);
                det = f.neg(&det);
            }
            det = f.mul(&det, &mat[col][col]);
            let inv = f.inv(&mat[col][col]).unwrap();
            for r in col + 1..size {
                let factor = f.mul(&mat[r][col], &inv);
                for c in col..size {
                    let t = f.mul(&factor, &mat[col][c]);
                    mat[r][c] = f.sub(&mat[r][c], &t);
                }
            }
        }
        det
    }

    #[test]
    fn resultant_matches_sylvester() {
        let f = PrimeField::new(101);
        let a = vec![1, 3, 1]; // x^2 + 3x + 1
        let b = vec![4, 1, 0, 2]; // 2x^3 + x + 4
        assert_eq!(resultant(&f, &a, &b), sylvester_det(&f, &a, &b));
        assert_eq!(resultant(&f, &b, &a), sylvester_det(&f, &b, &a));
        // shared root: (x-1) and (x-1)(x+5)
        let c = vec![100, 1];
        let d = mul(&f, &c, &[5, 1]);
        assert_eq!(resultant(&f, &c, &d), 0);
    }

    #[test]
    fn resultant_linear_pair() {
        // res(x-a, x-b) = a - b in the Sylvester convention
        let f = PrimeField::new(13);
        let a = vec![f.neg(&3), 1];
        let b = vec![f.neg(&7), 1];
        assert_eq!(resultant(&f, &a, &b), f.sub(&3, &7));
    }

    #[test]
    fn interpolation_roundtrip() {
        let f = PrimeField::new(11);
        let xs = vec![0, 1, 2];
        let ys = vec![1, 3, 7]; // x^2 + x + 1
        let p = interpolate(&f, &xs, &ys);
        assert_eq!(p, vec![1, 1, 1]);
        for (x, y) in xs.iter().zip(&ys) {
            assert_eq!(eval(&f, &p, x), *y);
        }
    }
}
