//! Exact arithmetic in cyclotomic fields Q(zeta_n): power-basis vectors
//! of arbitrary-precision rationals reduced modulo the n-th cyclotomic
//! polynomial, the compatible system of roots of unity, and the Galois
//! action of the units modulo n.

use crate::linalg::{rat_kernel, rat_rank};
use crate::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// The cyclotomic field Q(zeta_n), carrying the coefficients of the
/// monic minimal polynomial of zeta_n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloField {
    pub n: u64,
    /// Coefficients of Phi_n, constant term first, length degree + 1.
    pub modulus: Vec<BigInt>,
}

fn cyclotomic_poly(n: u64) -> Vec<BigInt> {
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, exact division in Z[x]
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = field(d).modulus.clone();
            num = poly_div_exact(&num, &phi_d);
        }
    }
    num
}

fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - dd] = c.clone();
        for j in 0..=dd {
            let t = &den[j] * &c;
            rem[i - dd + j] -= t;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division must be exact");
    quot
}

static FIELD_CACHE: OnceLock<Mutex<HashMap<u64, Arc<CycloField>>>> = OnceLock::new();

/// The field Q(zeta_n); construction of Phi_n is cached and idempotent.
pub fn field(n: u64) -> Arc<CycloField> {
    assert!(n >= 1, "conductor must be positive");
    let cache = FIELD_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().unwrap().get(&n) {
        return f.clone();
    }
    // compute outside the lock: cyclotomic_poly recurses into field()
    let modulus = if n == 1 {
        vec![-BigInt::one(), BigInt::one()]
    } else {
        cyclotomic_poly(n)
    };
    let f = Arc::new(CycloField { n, modulus });
    let mut guard = cache.lock().unwrap();
    guard.entry(n).or_insert_with(|| f.clone()).clone()
}

impl CycloField {
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }
}

/// Element of Q(zeta_n) in the power basis 1, zeta, ..., zeta^(phi(n)-1).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycloElem {
    n: u64,
    coeffs: Vec<BigRational>,
}

impl CycloElem {
    pub fn zero(n: u64) -> Self {
        CycloElem {
            n,
            coeffs: vec![BigRational::zero(); field(n).degree()],
        }
    }

    pub fn one(n: u64) -> Self {
        CycloElem::from_rational(n, BigRational::one())
    }

    pub fn from_rational(n: u64, q: BigRational) -> Self {
        let mut e = CycloElem::zero(n);
        e.coeffs[0] = q;
        e
    }

    pub fn from_integer(n: u64, k: i64) -> Self {
        CycloElem::from_rational(n, BigRational::from_integer(BigInt::from(k)))
    }

    pub fn from_coeffs(n: u64, coeffs: Vec<BigRational>) -> Self {
        let deg = field(n).degree();
        assert_eq!(coeffs.len(), deg, "coefficient vector length must be phi(n)");
        CycloElem { n, coeffs }
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// zeta_n^j for any integer j.
    pub fn zeta_pow(n: u64, j: i64) -> Self {
        let f = field(n);
        let deg = f.degree();
        let j = j.rem_euclid(n as i64) as usize;
        if j < deg {
            let mut e = CycloElem::zero(n);
            e.coeffs[j] = BigRational::one();
            return e;
        }
        // reduce x^j mod Phi_n by repeated multiplication by x
        let mut acc = CycloElem::one(n);
        for _ in 0..j {
            acc = acc.mul_by_zeta();
        }
        acc
    }

    fn mul_by_zeta(&self) -> Self {
        let f = field(self.n);
        let deg = f.degree();
        let mut out = vec![BigRational::zero(); deg];
        let lead = self.coeffs[deg - 1].clone();
        for i in (1..deg).rev() {
            out[i] = self.coeffs[i - 1].clone();
        }
        if !lead.is_zero() {
            // x^deg = -sum modulus[i] x^i
            for i in 0..deg {
                let m = BigRational::from_integer(f.modulus[i].clone());
                out[i] -= &m * &lead;
            }
        }
        out[0] += BigRational::zero();
        CycloElem {
            n: self.n,
            coeffs: out,
        }
    }

    pub fn add(&self, other: &CycloElem) -> CycloElem {
        assert_eq!(self.n, other.n, "mixed conductors; embed first");
        CycloElem {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &CycloElem) -> CycloElem {
        assert_eq!(self.n, other.n, "mixed conductors; embed first");
        CycloElem {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> CycloElem {
        CycloElem {
            n: self.n,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &CycloElem) -> CycloElem {
        assert_eq!(self.n, other.n, "mixed conductors; embed first");
        let f = field(self.n);
        let deg = f.degree();
        let mut prod = vec![BigRational::zero(); 2 * deg - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] += a * b;
            }
        }
        // reduce degrees >= deg using x^deg = -lower part of Phi
        for i in (deg..prod.len()).rev() {
            let c = prod[i].clone();
            if c.is_zero() {
                continue;
            }
            prod[i] = BigRational::zero();
            for j in 0..deg {
                let m = BigRational::from_integer(f.modulus[j].clone());
                prod[i - deg + j] -= &m * &c;
            }
        }
        prod.truncate(deg);
        CycloElem {
            n: self.n,
            coeffs: prod,
        }
    }

    pub fn scale(&self, q: &BigRational) -> CycloElem {
        CycloElem {
            n: self.n,
            coeffs: self.coeffs.iter().map(|a| a * q).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on
    /// polynomials over the rationals.
    pub fn inv(&self) -> Result<CycloElem> {
        if self.is_zero() {
            return Err(Error::NotInvertible);
        }
        let f = field(self.n);
        let phi: Vec<BigRational> = f
            .modulus
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let a: Vec<BigRational> = self.coeffs.clone();
        // extended gcd(a, phi): s*a + t*phi = gcd
        let (mut r0, mut r1) = (trim(&a), trim(&phi));
        let (mut s0, mut s1) = (vec![BigRational::one()], vec![BigRational::zero()]);
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.len() != 1 {
            return Err(Error::NotInvertible);
        }
        let lead = r0[0].clone();
        let mut inv_coeffs: Vec<BigRational> = s0.iter().map(|c| c / &lead).collect();
        inv_coeffs.resize(f.degree(), BigRational::zero());
        Ok(CycloElem {
            n: self.n,
            coeffs: inv_coeffs,
        })
    }

    pub fn pow(&self, k: i64) -> Result<CycloElem> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        let mut acc = CycloElem::one(self.n);
        let mut base = self.clone();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// True iff every power-basis coefficient is an integer; for
    /// cyclotomic fields the power basis is an integral basis, so this
    /// is membership in Z[zeta_n].
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    /// Reinterpret in a larger conductor N (n | N) via zeta_n = zeta_N^(N/n).
    pub fn embed(&self, target: u64) -> Result<CycloElem> {
        if target % self.n != 0 {
            return Err(Error::NotADivisor(self.n, target));
        }
        if target == self.n {
            return Ok(self.clone());
        }
        let step = (target / self.n) as i64;
        let mut acc = CycloElem::zero(target);
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&CycloElem::zeta_pow(target, j as i64 * step).scale(c));
            }
        }
        Ok(acc)
    }

    /// Flatten to the rational coordinate vector in the power basis.
    pub fn to_rational_vec(&self) -> Vec<BigRational> {
        self.coeffs.clone()
    }
}

impl std::fmt::Display for CycloElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if j == 0 {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "z^{j}")?;
            } else {
                write!(f, "{c}*z^{j}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn trim(p: &[BigRational]) -> Vec<BigRational> {
    let mut v = p.to_vec();
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let len = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); len];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&out)
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() <= db {
        return (vec![], trim(&rem));
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for i in (db..rem.len()).rev() {
        let c = &rem[i] / &lead;
        if c.is_zero() {
            continue;
        }
        quot[i - db] = c.clone();
        for j in 0..=db {
            let t = &b[j] * &c;
            rem[i - db + j] -= t;
        }
    }
    (trim(&quot), trim(&rem))
}

/// Galois automorphism zeta -> zeta^u of Q(zeta_n), u a unit mod n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GaloisAuto {
    pub u: u64,
}

impl GaloisAuto {
    pub fn new(u: u64, n: u64) -> Result<Self> {
        if crate::abelian::mod_inv(u % n, n).is_none() {
            return Err(Error::NotAUnit(u, n));
        }
        Ok(GaloisAuto { u: u % n })
    }
}

/// Apply zeta -> zeta^u coefficientwise; a ring automorphism fixing Q.
pub fn galois_apply(sigma: GaloisAuto, x: &CycloElem) -> CycloElem {
    let n = x.conductor();
    let mut acc = CycloElem::zero(n);
    for (j, c) in x.coeffs().iter().enumerate() {
        if !c.is_zero() {
            let img = CycloElem::zeta_pow(n, (j as u64 * sigma.u % n) as i64);
            acc = acc.add(&img.scale(c));
        }
    }
    acc
}

/// Shorthand for [`galois_apply`] with a bare unit.
pub fn galois_apply_unit(u: u64, x: &CycloElem) -> CycloElem {
    let n = x.conductor();
    galois_apply(GaloisAuto::new(u, n).expect("caller passes a unit"), x)
}

/// zeta_n^(n/d), a primitive d-th root of unity in Q(zeta_n), for d | n.
pub fn zeta(f: &CycloField, d: u64) -> Result<CycloElem> {
    if d == 0 || f.n % d != 0 {
        return Err(Error::NotADivisor(d, f.n));
    }
    Ok(CycloElem::zeta_pow(f.n, (f.n / d) as i64))
}

/// True iff every automorphism in H fixes x. H must be closed under
/// multiplication modulo n.
pub fn fixed_subfield_check(x: &CycloElem, h: &[u64]) -> Result<bool> {
    let n = x.conductor();
    let hs: Vec<u64> = h.iter().map(|u| u % n).collect();
    for &a in &hs {
        if crate::abelian::mod_inv(a, n).is_none() {
            return Err(Error::NotAUnit(a, n));
        }
        for &b in &hs {
            if !hs.contains(&(a * b % n)) {
                return Err(Error::NotClosed);
            }
        }
    }
    Ok(hs.iter().all(|&u| galois_apply_unit(u, x) == *x))
}

/// Subgroup of units mod n generated by the given elements.
pub fn unit_subgroup_closure(n: u64, gens: &[u64]) -> Result<Vec<u64>> {
    let mut set = vec![1 % n.max(1)];
    if n == 1 {
        return Ok(vec![0]);
    }
    let mut frontier: Vec<u64> = gens.iter().map(|g| g % n).collect();
    for &g in &frontier {
        if crate::abelian::mod_inv(g, n).is_none() {
            return Err(Error::NotAUnit(g, n));
        }
    }
    while let Some(g) = frontier.pop() {
        if !set.contains(&g) {
            set.push(g);
            for &h in &set.clone() {
                frontier.push(g * h % n);
            }
        }
    }
    set.sort_unstable();
    Ok(set)
}

/// A rational basis of the fixed field Q(zeta_n)^H, scaled to have
/// integer coefficients. H is given as a list of units mod n closed
/// under multiplication.
pub fn fixed_field_basis(n: u64, h: &[u64]) -> Vec<CycloElem> {
    let deg = field(n).degree();
    // stack (M_u - I) for every u in H; fixed space is the common kernel
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for &u in h {
        if u % n == 1 {
            continue;
        }
        // matrix rows of (galois_apply(u) - id) in the power basis
        let mut cols: Vec<Vec<BigRational>> = Vec::new();
        for j in 0..deg {
            let mut e = CycloElem::zero(n);
            e.coeffs[j] = BigRational::one();
            let img = galois_apply_unit(u, &e);
            cols.push(img.coeffs().to_vec());
        }
        for i in 0..deg {
            let mut row: Vec<BigRational> = (0..deg).map(|j| cols[j][i].clone()).collect();
            row[i] -= BigRational::one();
            rows.push(row);
        }
    }
    if rows.is_empty() {
        // trivial H fixes everything
        return (0..deg)
            .map(|j| CycloElem::zeta_pow(n, j as i64))
            .collect();
    }
    let kernel = rat_kernel(&rows, deg);
    kernel
        .into_iter()
        .map(|v| {
            let lcm = v
                .iter()
                .fold(BigInt::one(), |acc, c| num::integer::lcm(acc, c.denom().clone()));
            let scaled: Vec<BigRational> = v
                .iter()
                .map(|c| c * BigRational::from_integer(lcm.clone()))
                .collect();
            CycloElem::from_coeffs(n, scaled)
        })
        .collect()
}

/// Rank over Q of a set of cyclotomic elements viewed as rational vectors.
pub fn rational_rank(elems: &[CycloElem]) -> usize {
    let rows: Vec<Vec<BigRational>> = elems.iter().map(|e| e.to_rational_vec()).collect();
    rat_rank(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(field(1).modulus, vec![BigInt::from(-1), BigInt::from(1)]);
        assert_eq!(field(2).modulus, vec![BigInt::from(1), BigInt::from(1)]);
        assert_eq!(
            field(4).modulus,
            vec![BigInt::from(1), BigInt::from(0), BigInt::from(1)]
        );
        // Phi_12 = x^4 - x^2 + 1
        assert_eq!(
            field(12).modulus,
            [1, 0, -1, 0, 1].iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>()
        );
        assert_eq!(field(9).degree(), 6);
        assert_eq!(euler_phi(40), 16);
    }

    #[test]
    fn zeta_examples() {
        let f = field(4);
        assert!(zeta(&f, 1).unwrap().is_one());
        let i = zeta(&f, 4).unwrap();
        assert_eq!(i, CycloElem::zeta_pow(4, 1));
        // zeta_12^3 is a primitive 4th root: its square is -1
        let f12 = field(12);
        let z4 = zeta(&f12, 4).unwrap();
        assert_eq!(z4.mul(&z4), CycloElem::from_integer(12, -1));
        assert!(zeta(&f12, 5).is_err());
    }

    #[test]
    fn zeta_compatibility() {
        // (zeta(n, d*e))^e = zeta(n, d) whenever d*e | n
        for n in [8u64, 12, 30] {
            let f = field(n);
            for d in 1..=n {
                for e in 1..=n {
                    if d * e <= n && n % (d * e) == 0 {
                        let big = zeta(&f, d * e).unwrap();
                        assert_eq!(big.pow(e as i64).unwrap(), zeta(&f, d).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn galois_examples() {
        let z = CycloElem::zeta_pow(4, 1);
        assert_eq!(galois_apply_unit(1, &z), z);
        // u = 3: zeta_4 -> zeta_4^3 = -zeta_4
        assert_eq!(galois_apply_unit(3, &z), z.neg());
        assert!(GaloisAuto::new(2, 4).is_err());
    }

    #[test]
    fn galois_is_ring_hom_and_composes() {
        let n = 12;
        let x = CycloElem::zeta_pow(n, 1).add(&CycloElem::from_integer(n, 3));
        let y = CycloElem::zeta_pow(n, 5).sub(&CycloElem::from_integer(n, 1));
        for u in [5u64, 7, 11] {
            let s = |t: &CycloElem| galois_apply_unit(u, t);
            assert_eq!(s(&x.add(&y)), s(&x).add(&s(&y)));
            assert_eq!(s(&x.mul(&y)), s(&x).mul(&s(&y)));
        }
        // composition: sigma_u . sigma_v = sigma_(uv)
        let a = galois_apply_unit(5, &galois_apply_unit(7, &x));
        let b = galois_apply_unit(5 * 7 % 12, &x);
        assert_eq!(a, b);
    }

    #[test]
    fn field_axioms_small() {
        let n = 9;
        let elems = [
            CycloElem::zeta_pow(n, 1),
            CycloElem::zeta_pow(n, 4).add(&CycloElem::from_integer(n, 2)),
            CycloElem::from_rational(n, BigRational::new(BigInt::from(3), BigInt::from(7))),
        ];
        for x in &elems {
            for y in &elems {
                for z in &elems {
                    assert_eq!(x.mul(y).mul(z), x.mul(&y.mul(z)));
                }
            }
            if !x.is_zero() {
                assert!(x.mul(&x.inv().unwrap()).is_one());
            }
        }
    }

    #[test]
    fn integrality_examples() {
        let n = 3;
        assert!(CycloElem::zeta_pow(n, 1).is_integral());
        let half = CycloElem::from_rational(n, BigRational::new(BigInt::from(1), BigInt::from(2)));
        assert!(!half.is_integral());
        let third = CycloElem::one(n)
            .add(&CycloElem::zeta_pow(n, 1))
            .scale(&BigRational::new(BigInt::from(1), BigInt::from(3)));
        assert!(!third.is_integral());
        // closed under products
        let a = CycloElem::zeta_pow(12, 5).add(&CycloElem::from_integer(12, 2));
        let b = CycloElem::zeta_pow(12, 7).sub(&CycloElem::from_integer(12, 5));
        assert!(a.is_integral() && b.is_integral() && a.mul(&b).is_integral());
    }

    #[test]
    fn fixed_subfield_examples() {
        let n = 5;
        let x = CycloElem::from_integer(n, 7);
        assert!(fixed_subfield_check(&x, &[1, 4]).unwrap());
        let y = CycloElem::zeta_pow(n, 1).add(&CycloElem::zeta_pow(n, 4));
        assert!(fixed_subfield_check(&y, &[1, 4]).unwrap());
        let z = CycloElem::zeta_pow(n, 1);
        assert!(!fixed_subfield_check(&z, &[1, 4]).unwrap());
        // {1, 2} is not closed mod 5
        assert_eq!(fixed_subfield_check(&x, &[1, 2]), Err(Error::NotClosed));
    }

    #[test]
    fn fixed_field_basis_dimensions() {
        // Q(zeta_5)^{1,4} is the real quadratic subfield: dimension 2
        let basis = fixed_field_basis(5, &[1, 4]);
        assert_eq!(basis.len(), 2);
        for b in &basis {
            assert!(b.is_integral());
            assert!(fixed_subfield_check(b, &[1, 4]).unwrap());
        }
        assert_eq!(rational_rank(&basis), 2);
        // the full group fixes only Q
        let h = unit_subgroup_closure(5, &[2]).unwrap();
        assert_eq!(h, vec![1, 2, 3, 4]);
        let basis = fixed_field_basis(5, &h);
        assert_eq!(basis.len(), 1);
        assert!(basis[0].is_rational());
    }

    #[test]
    fn embed_compatibility() {
        let z5 = CycloElem::zeta_pow(5, 1);
        let e = z5.embed(10).unwrap();
        assert_eq!(e, CycloElem::zeta_pow(10, 2));
        assert_eq!(e.pow(5).unwrap(), CycloElem::one(10));
        let x = z5.add(&CycloElem::zeta_pow(5, 4));
        let y = x.embed(10).unwrap();
        assert_eq!(y, CycloElem::zeta_pow(10, 2).add(&CycloElem::zeta_pow(10, 8)));
        assert!(z5.embed(12).is_err());
    }
}
