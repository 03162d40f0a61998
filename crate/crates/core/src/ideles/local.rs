//! The tame local Galois model: residue data q = p^f, homomorphisms
//! given by their values on the Frobenius and ramification generators,
//! the unramified/totally-ramified factorization, formal multiplicative
//! values u * pi^r with the phi and sigma actions on them, and prime
//! elements of the Lambda space.

use crate::abelian::{elem_order, FinAbGroup, GroupElem};
use crate::cyclo::{galois_apply_unit, CycloElem};
use crate::stickelberger::{AghLattice, HomOnAgh, LambdaMap, MultValue};
use crate::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

/// Residue data of a tame local field model: q elements in the residue
/// field, residue characteristic p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalTameGroup {
    pub q: u64,
    pub p: u64,
}

impl LocalTameGroup {
    pub fn new(q: u64) -> Result<Self> {
        let p = smallest_prime_factor(q)
            .ok_or_else(|| Error::Precondition("q must be at least 2".into()))?;
        let mut m = q;
        while m % p == 0 {
            m /= p;
        }
        if m != 1 {
            return Err(Error::Precondition(format!("{q} is not a prime power")));
        }
        Ok(LocalTameGroup { q, p })
    }
}

fn smallest_prime_factor(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return Some(d);
        }
        d += 1;
    }
    Some(n)
}

/// Tame local homomorphism, determined by the images of the Frobenius
/// and the ramification generator; the latter must have order dividing
/// q - 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalTameHom {
    pub q: u64,
    pub frob: GroupElem,
    pub ram: GroupElem,
}

impl LocalTameHom {
    pub fn new(q: u64, frob: GroupElem, ram: GroupElem) -> Result<Self> {
        if frob.group() != ram.group() {
            return Err(Error::GroupMismatch);
        }
        let ord = elem_order(&ram);
        if (q - 1) % ord != 0 {
            return Err(Error::OrderNotDividing(ord, q - 1));
        }
        Ok(LocalTameHom { q, frob, ram })
    }

    pub fn trivial(q: u64, group: &FinAbGroup) -> Self {
        LocalTameHom {
            q,
            frob: group.identity(),
            ram: group.identity(),
        }
    }

    pub fn group(&self) -> &FinAbGroup {
        self.frob.group()
    }

    pub fn is_unramified(&self) -> bool {
        self.ram.is_identity()
    }

    pub fn mul(&self, other: &LocalTameHom) -> Result<LocalTameHom> {
        if self.q != other.q {
            return Err(Error::KindMismatch);
        }
        LocalTameHom::new(
            self.q,
            self.frob.add(&other.frob)?,
            self.ram.add(&other.ram)?,
        )
    }
}

/// All tame local homomorphisms into G for residue size q: any Frobenius
/// image, ramification image of order dividing q - 1.
pub fn local_homs(q: u64, group: &FinAbGroup) -> Vec<LocalTameHom> {
    let mut out = Vec::new();
    for frob in group.elements() {
        for ram in group.elements() {
            if (q - 1) % elem_order(&ram) == 0 {
                out.push(LocalTameHom {
                    q,
                    frob: frob.clone(),
                    ram,
                });
            }
        }
    }
    out
}

/// The factorization with respect to the ramification generator: the
/// unramified part keeps the Frobenius image, the totally ramified part
/// keeps the ramification image.
pub fn factorize(h: &LocalTameHom) -> (LocalTameHom, LocalTameHom) {
    let group = h.group().clone();
    (
        LocalTameHom {
            q: h.q,
            frob: h.frob.clone(),
            ram: group.identity(),
        },
        LocalTameHom {
            q: h.q,
            frob: group.identity(),
            ram: h.ram.clone(),
        },
    )
}

/// True iff the totally ramified part is trivial.
pub fn is_unramified(h: &LocalTameHom) -> bool {
    h.is_unramified()
}

/// Formal multiplicative local value: a nonzero cyclotomic unit part
/// times a rational power of a per-place uniformizer symbol. The symbol
/// is dropped when the exponent is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalMultValue {
    unit: CycloElem,
    pi_exp: BigRational,
    unif: Option<u32>,
}

impl LocalMultValue {
    pub fn new(unit: CycloElem, pi_exp: BigRational, unif: Option<u32>) -> Self {
        assert!(!unit.is_zero(), "unit part must be nonzero");
        let unif = if pi_exp.is_zero() { None } else { unif };
        if !pi_exp.is_zero() {
            assert!(unif.is_some(), "nonzero exponent needs a uniformizer symbol");
        }
        LocalMultValue { unit, pi_exp, unif }
    }

    pub fn one(n: u64) -> Self {
        LocalMultValue {
            unit: CycloElem::one(n),
            pi_exp: BigRational::zero(),
            unif: None,
        }
    }

    pub fn from_unit(unit: CycloElem) -> Self {
        LocalMultValue::new(unit, BigRational::zero(), None)
    }

    pub fn pi(unif: u32, n: u64) -> Self {
        LocalMultValue::new(CycloElem::one(n), BigRational::one(), Some(unif))
    }

    pub fn unit_part(&self) -> &CycloElem {
        &self.unit
    }

    pub fn pi_exp(&self) -> &BigRational {
        &self.pi_exp
    }

    pub fn unif(&self) -> Option<u32> {
        self.unif
    }

    pub fn conductor(&self) -> u64 {
        self.unit.conductor()
    }

    fn merged_unif(&self, other: &Self) -> Option<u32> {
        match (self.unif, other.unif) {
            (Some(a), Some(b)) => {
                assert_eq!(a, b, "uniformizer symbols from different places");
                Some(a)
            }
            (Some(a), None) => Some(a),
            (None, b) => b,
        }
    }

    /// The Frobenius action: zeta -> zeta^q on the unit part, radicals
    /// fixed. q must be coprime to the conductor.
    pub fn apply_frobenius(&self, q: u64) -> LocalMultValue {
        LocalMultValue {
            unit: galois_apply_unit(q % self.unit.conductor(), &self.unit),
            pi_exp: self.pi_exp.clone(),
            unif: self.unif,
        }
    }

    /// The ramification action: units fixed, pi^(a/b) multiplied by the
    /// primitive b-th root of unity raised to a. The denominator must
    /// divide the conductor.
    pub fn apply_sigma(&self) -> Result<LocalMultValue> {
        if self.pi_exp.is_zero() {
            return Ok(self.clone());
        }
        let n = self.unit.conductor();
        let b = self.pi_exp.denom().clone();
        let a = self.pi_exp.numer().clone();
        let b64 = u64::try_from(&b).map_err(|_| {
            Error::Precondition("radical denominator out of range".into())
        })?;
        if n % b64 != 0 {
            return Err(Error::NotADivisor(b64, n));
        }
        let a_mod = (&a % &b).mod_floor(&b);
        let a64 = i64::try_from(&a_mod).expect("reduced exponent");
        let root = CycloElem::zeta_pow(n, (n / b64) as i64 * a64);
        Ok(LocalMultValue {
            unit: self.unit.mul(&root),
            pi_exp: self.pi_exp.clone(),
            unif: self.unif,
        })
    }

    pub fn apply_sigma_inverse(&self) -> Result<LocalMultValue> {
        if self.pi_exp.is_zero() {
            return Ok(self.clone());
        }
        let n = self.unit.conductor();
        let b = self.pi_exp.denom().clone();
        let a = self.pi_exp.numer().clone();
        let b64 = u64::try_from(&b).map_err(|_| {
            Error::Precondition("radical denominator out of range".into())
        })?;
        if n % b64 != 0 {
            return Err(Error::NotADivisor(b64, n));
        }
        let a_mod = (&a % &b).mod_floor(&b);
        let a64 = i64::try_from(&a_mod).expect("reduced exponent");
        let root = CycloElem::zeta_pow(n, -((n / b64) as i64) * a64);
        Ok(LocalMultValue {
            unit: self.unit.mul(&root),
            pi_exp: self.pi_exp.clone(),
            unif: self.unif,
        })
    }

    /// Transport along a place isomorphism: the unit part moves through
    /// the Galois action of the lift, the uniformizer symbol is renamed.
    /// Values carrying a uniformizer cannot enter a ramified place.
    pub fn transport(&self, lift_unit: u64, target_unif: u32, target_ramified: bool) -> Result<LocalMultValue> {
        if !self.pi_exp.is_zero() && target_ramified {
            return Err(Error::RamifiedTransport);
        }
        Ok(LocalMultValue {
            unit: galois_apply_unit(lift_unit % self.unit.conductor(), &self.unit),
            pi_exp: self.pi_exp.clone(),
            unif: if self.pi_exp.is_zero() {
                None
            } else {
                Some(target_unif)
            },
        })
    }

    /// Integrality over the local ring: nonnegative uniformizer exponent
    /// and unit-part denominators coprime to p.
    pub fn is_integral_at(&self, p: u64) -> bool {
        if self.pi_exp.is_negative() {
            return false;
        }
        self.unit
            .coeffs()
            .iter()
            .all(|c| (c.denom() % BigInt::from(p)) != BigInt::zero())
    }

    /// Unit of the local integers: exponent zero and the unit part
    /// invertible over the p-local ring.
    pub fn is_unit_at(&self, p: u64) -> bool {
        if !self.pi_exp.is_zero() {
            return false;
        }
        if !self.is_integral_at(p) {
            return false;
        }
        match self.unit.inv() {
            Ok(inv) => inv
                .coeffs()
                .iter()
                .all(|c| (c.denom() % BigInt::from(p)) != BigInt::zero()),
            Err(_) => false,
        }
    }

    /// Congruence-unit test: exponent zero and (unit - 1)/m integral.
    pub fn is_congruence_unit(&self, m: u64) -> bool {
        if !self.pi_exp.is_zero() {
            return false;
        }
        let n = self.unit.conductor();
        let diff = self.unit.sub(&CycloElem::one(n));
        let scale = BigRational::new(BigInt::one(), BigInt::from(m));
        diff.scale(&scale).is_integral()
    }
}

impl std::fmt::Display for LocalMultValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.pi_exp.is_zero() {
            write!(f, "{}", self.unit)
        } else {
            write!(f, "({})*pi{}^({})", self.unit, self.unif.unwrap_or(0), self.pi_exp)
        }
    }
}

impl MultValue for LocalMultValue {
    fn mul(&self, other: &Self) -> Self {
        let unif = self.merged_unif(other);
        LocalMultValue::new(
            self.unit.mul(&other.unit),
            &self.pi_exp + &other.pi_exp,
            unif,
        )
    }

    fn inv(&self) -> Result<Self> {
        Ok(LocalMultValue::new(
            self.unit.inv()?,
            -self.pi_exp.clone(),
            self.unif,
        ))
    }

    fn powi(&self, k: i64) -> Result<Self> {
        Ok(LocalMultValue::new(
            self.unit.pow(k)?,
            &self.pi_exp * BigRational::from_integer(k.into()),
            self.unif,
        ))
    }

    fn galois(&self, u: u64) -> Self {
        LocalMultValue {
            unit: galois_apply_unit(u % self.unit.conductor(), &self.unit),
            pi_exp: self.pi_exp.clone(),
            unif: self.unif,
        }
    }

    fn is_one(&self) -> bool {
        self.pi_exp.is_zero() && self.unit.is_one()
    }
}

/// The prime element of the Lambda space attached to s: the map sending
/// s to the uniformizer and everything else to 1. Defined when the
/// order of s divides q - 1.
pub fn prime_f(
    s: &GroupElem,
    q: u64,
    unif: u32,
    n: u64,
) -> Result<LambdaMap<LocalMultValue>> {
    let ord = elem_order(s);
    if (q - 1) % ord != 0 {
        return Err(Error::OrderNotDividing(ord, q - 1));
    }
    let group = s.group().clone();
    let values = group
        .elements()
        .iter()
        .map(|t| {
            if t == s && !s.is_identity() {
                LocalMultValue::pi(unif, n)
            } else {
                LocalMultValue::one(n)
            }
        })
        .collect();
    Ok(LambdaMap::new(&group, values))
}

/// Equivariance of a local Lambda-map for the tame local action: the
/// Frobenius twists both sides, the ramification generator fixes the
/// group and acts on values.
pub fn local_lambda_is_equivariant(f: &LambdaMap<LocalMultValue>, q: u64) -> Result<bool> {
    let m = f.group().exponent();
    // Frobenius: f(s^(q^-1 mod m)) = phi(f(s))
    let q_inv = if m <= 1 {
        1
    } else {
        crate::abelian::mod_inv(q % m, m).ok_or(Error::NotAUnit(q, m))?
    };
    for s in f.group().elements() {
        let lhs = f.value(&s.scale(q_inv as i64));
        let rhs = f.value(&s).apply_frobenius(q);
        if lhs != &rhs {
            return Ok(false);
        }
        // sigma fixes G(-1) and must fix the values
        if &f.value(&s).apply_sigma()? != f.value(&s) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The reduced resolvend of the totally ramified part: the transpose of
/// a prime element evaluated on the kernel-lattice basis; all exponents
/// are integral.
pub fn local_transpose_resolvend(
    f: &LambdaMap<LocalMultValue>,
    lattice: &AghLattice,
) -> Result<HomOnAgh<LocalMultValue>> {
    let hom = crate::stickelberger::transpose_as_hom(f, lattice)?;
    for v in hom.basis_values() {
        debug_assert!(v.pi_exp().denom().is_one(), "lattice exponents are integral");
    }
    Ok(hom)
}
