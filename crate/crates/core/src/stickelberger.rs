//! The Stickelberger pairing, map and kernel lattice, Galois
//! equivariance of the map, and the modified transpose evaluated on
//! multiplicative values.

use crate::abelian::{char_eval, mod_inv, Character, FinAbGroup, GroupElem};
use crate::cyclo::{galois_apply_unit, CycloElem};
use crate::linalg::{in_row_span, kernel_rows, lattice_index, row_hnf, IntMat};
use crate::resolvend::{GaloisModel, ReducedResolvend, UnitHom};
use crate::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

/// Rational combination of characters, indexed by the canonical
/// character enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharCombo {
    group: FinAbGroup,
    coeffs: Vec<BigRational>,
}

impl CharCombo {
    pub fn zero(group: &FinAbGroup) -> Self {
        CharCombo {
            group: group.clone(),
            coeffs: vec![BigRational::zero(); group.order() as usize],
        }
    }

    pub fn single(chi: &Character, c: BigRational) -> Self {
        let group = chi.group().clone();
        let mut e = CharCombo::zero(&group);
        let idx = group.index_of(&group.elem(
            &chi.coords().iter().map(|&x| x as i64).collect::<Vec<_>>(),
        ));
        e.coeffs[idx] = c;
        e
    }

    pub fn from_integer_coeffs(group: &FinAbGroup, coeffs: &[i64]) -> Self {
        assert_eq!(coeffs.len(), group.order() as usize);
        CharCombo {
            group: group.clone(),
            coeffs: coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        }
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn add(&self, other: &CharCombo) -> Result<CharCombo> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        Ok(CharCombo {
            group: self.group.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        if !self.is_integral() {
            return None;
        }
        Some(self.coeffs.iter().map(|c| c.numer().clone()).collect())
    }

    /// The image under det: ZG^ -> G^, i.e. the product of the
    /// characters with multiplicity. Requires integral coefficients.
    pub fn det(&self) -> Result<Character> {
        let ints = self
            .integer_coeffs()
            .ok_or_else(|| Error::Precondition("det needs integer coefficients".into()))?;
        let mut acc = self.group.trivial_character();
        for (chi, c) in self.group.characters().iter().zip(&ints) {
            let c = i64::try_from(c).map_err(|_| {
                Error::Precondition("det coefficient out of range".into())
            })?;
            acc = acc.mul(&chi.pow(c))?;
        }
        Ok(acc)
    }

    /// Replace every character chi by chi^u.
    pub fn power_transport(&self, u: i64) -> CharCombo {
        let mut out = CharCombo::zero(&self.group);
        for (chi, c) in self.group.characters().iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let img = chi.pow(u);
            let idx = self.group.index_of(
                &self
                    .group
                    .elem(&img.coords().iter().map(|&x| x as i64).collect::<Vec<_>>()),
            );
            out.coeffs[idx] += c;
        }
        out
    }
}

/// Rational combination of group elements, indexed by the canonical
/// element enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupCombo {
    group: FinAbGroup,
    coeffs: Vec<BigRational>,
}

impl GroupCombo {
    pub fn zero(group: &FinAbGroup) -> Self {
        GroupCombo {
            group: group.clone(),
            coeffs: vec![BigRational::zero(); group.order() as usize],
        }
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, s: &GroupElem) -> &BigRational {
        &self.coeffs[self.group.index_of(s)]
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    /// Transport every group element s to s^k.
    pub fn power_transport(&self, k: i64) -> GroupCombo {
        let mut out = GroupCombo::zero(&self.group);
        for (s, c) in self.group.elements().iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let idx = self.group.index_of(&s.scale(k));
            out.coeffs[idx] += c;
        }
        out
    }
}

/// The Stickelberger pairing <chi, s> = v(chi, s) / |s|, a rational in
/// [0, 1).
pub fn pairing(chi: &Character, s: &GroupElem) -> Result<BigRational> {
    let (v, ord) = char_eval(chi, s)?;
    Ok(BigRational::new(BigInt::from(v), BigInt::from(ord)))
}

/// The Stickelberger map Theta(psi) = sum_s <psi, s> s, Q-linear in psi.
pub fn theta(psi: &CharCombo) -> GroupCombo {
    let group = psi.group().clone();
    let mut out = GroupCombo::zero(&group);
    let chars = group.characters();
    for (si, s) in group.elements().iter().enumerate() {
        let mut acc = BigRational::zero();
        for (chi, c) in chars.iter().zip(psi.coeffs()) {
            if !c.is_zero() {
                acc += c * pairing(chi, s).expect("same group");
            }
        }
        out.coeffs[si] = acc;
    }
    out
}

/// Integer basis of the kernel lattice of det inside ZG^, rows in
/// Hermite normal form; the index in ZG^ equals |G|.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AghLattice {
    group: FinAbGroup,
    basis: IntMat,
}

impl AghLattice {
    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn basis(&self) -> &IntMat {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.rows
    }

    /// The i-th basis row as an integer character combination.
    pub fn basis_combo(&self, i: usize) -> CharCombo {
        CharCombo {
            group: self.group.clone(),
            coeffs: self
                .basis
                .row(i)
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        }
    }

    pub fn index(&self) -> BigInt {
        lattice_index(&self.basis).expect("kernel lattice has full rank")
    }

    /// Integer coordinates of psi against the basis rows, if any.
    pub fn coordinates(&self, psi: &CharCombo) -> Option<Vec<BigInt>> {
        let target = psi.integer_coeffs()?;
        in_row_span(&self.basis, &target)
    }

    pub fn contains(&self, psi: &CharCombo) -> bool {
        self.coordinates(psi).is_some()
    }
}

/// Kernel of det: ZG^ -> G^ computed by a Smith-normal-form kernel of
/// the congruence system, then put into Hermite normal form.
pub fn agh_basis(group: &FinAbGroup) -> AghLattice {
    let n = group.order() as usize;
    let k = group.num_factors();
    if k == 0 {
        return AghLattice {
            group: group.clone(),
            basis: IntMat::identity(n),
        };
    }
    // columns: dual coordinates of each character; the kernel of
    // x -> sum x_chi . coords(chi) modulo the invariant factors is the
    // projection of ker [A | D].
    let mut m = IntMat::zero(k, n + k);
    for (j, chi) in group.characters().iter().enumerate() {
        for (i, &c) in chi.coords().iter().enumerate() {
            m[(i, j)] = BigInt::from(c);
        }
    }
    for (i, &d) in group.invariant_factors().iter().enumerate() {
        m[(i, n + i)] = BigInt::from(d);
    }
    let ker = kernel_rows(&m);
    let mut projected = IntMat::zero(ker.rows, n);
    for i in 0..ker.rows {
        for j in 0..n {
            projected[(i, j)] = ker[(i, j)].clone();
        }
    }
    AghLattice {
        group: group.clone(),
        basis: row_hnf(&projected),
    }
}

/// Both routes of the integrality criterion: coefficient integrality of
/// Theta(psi), and lattice membership solved against the basis. The two
/// booleans are computed independently.
pub fn integrality_criterion(psi: &CharCombo, lattice: &AghLattice) -> Result<(bool, bool)> {
    if !psi.is_integral() {
        return Err(Error::Precondition(
            "integrality criterion needs integer coefficients".into(),
        ));
    }
    let theta_integral = theta(psi).is_integral();
    let in_agh = lattice.contains(psi);
    Ok((theta_integral, in_agh))
}

/// Equivariance of Theta for the twisted action: replacing chi by chi^u
/// on the source matches transporting s to s^(u^-1) on the target.
pub fn equivariance_check(psi: &CharCombo, u: u64) -> Result<bool> {
    let m = psi.group().exponent();
    if m <= 1 {
        return Ok(true);
    }
    let u_inv = mod_inv(u % m, m).ok_or(Error::NotAUnit(u, m))?;
    let lhs = theta(&psi.power_transport((u % m) as i64));
    let rhs = theta(psi).power_transport(u_inv as i64);
    Ok(lhs == rhs)
}

/// Contract for the multiplicative values the transpose acts on:
/// cyclotomic units or formal local values.
pub trait MultValue: Clone + PartialEq + std::fmt::Debug {
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Result<Self>;
    fn powi(&self, k: i64) -> Result<Self>;
    /// Galois twist of the algebraic part by a unit of the ambient
    /// cyclotomic field.
    fn galois(&self, u: u64) -> Self;
    fn is_one(&self) -> bool;
}

impl MultValue for CycloElem {
    fn mul(&self, other: &Self) -> Self {
        CycloElem::mul(self, other)
    }

    fn inv(&self) -> Result<Self> {
        CycloElem::inv(self)
    }

    fn powi(&self, k: i64) -> Result<Self> {
        self.pow(k)
    }

    fn galois(&self, u: u64) -> Self {
        galois_apply_unit(u, self)
    }

    fn is_one(&self) -> bool {
        CycloElem::is_one(self)
    }
}

/// Map from G into a multiplicative value group, indexed by the
/// canonical element enumeration; the Lambda-space element of the
/// transpose.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaMap<V: MultValue> {
    group: FinAbGroup,
    values: Vec<V>,
}

impl<V: MultValue> LambdaMap<V> {
    pub fn new(group: &FinAbGroup, values: Vec<V>) -> Self {
        assert_eq!(values.len(), group.order() as usize);
        LambdaMap {
            group: group.clone(),
            values,
        }
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn value(&self, s: &GroupElem) -> &V {
        &self.values[self.group.index_of(s)]
    }

    pub fn values(&self) -> &[V] {
        &self.values
    }

    pub fn is_all_one(&self) -> bool {
        self.values.iter().all(|v| v.is_one())
    }

    pub fn mul(&self, other: &LambdaMap<V>) -> Result<LambdaMap<V>> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        Ok(LambdaMap {
            group: self.group.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.mul(b))
                .collect(),
        })
    }

    pub fn inv(&self) -> Result<LambdaMap<V>> {
        Ok(LambdaMap {
            group: self.group.clone(),
            values: self
                .values
                .iter()
                .map(|v| v.inv())
                .collect::<Result<Vec<_>>>()?,
        })
    }
}

/// Equivariance of a global Lambda-map for the inverse-twist action of a
/// unit subgroup: f(s^(u^-1)) = u . f(s) for every u in gamma.
pub fn lambda_is_equivariant<V: MultValue>(f: &LambdaMap<V>, gamma: &[u64]) -> bool {
    let m = f.group().exponent();
    for &u in gamma {
        let u_inv = match m {
            0 | 1 => 1,
            _ => match mod_inv(u % m, m) {
                Some(v) => v,
                None => return false,
            },
        };
        for s in f.group().elements() {
            let lhs = f.value(&s.scale(u_inv as i64));
            let rhs = f.value(&s).galois(u);
            if lhs != &rhs {
                return false;
            }
        }
    }
    true
}

/// The modified Stickelberger transpose on one lattice member:
/// prod_s f(s)^{<psi, s>}, defined exactly when all exponents are
/// integers, i.e. when psi lies in the kernel lattice.
pub fn transpose<V: MultValue>(
    f: &LambdaMap<V>,
    psi: &CharCombo,
    lattice: &AghLattice,
) -> Result<V> {
    if f.group() != psi.group() {
        return Err(Error::GroupMismatch);
    }
    if !lattice.contains(psi) {
        return Err(Error::NotInKernelLattice);
    }
    let exps = theta(psi);
    debug_assert!(exps.is_integral());
    let mut acc = f.values()[0].powi(0)?;
    for (s, e) in f.group().elements().iter().zip(exps.coeffs()) {
        if e.is_zero() {
            continue;
        }
        let k = i64::try_from(e.numer()).map_err(|_| {
            Error::Precondition("transpose exponent out of range".into())
        })?;
        acc = acc.mul(&f.value(s).powi(k)?);
    }
    Ok(acc)
}

/// A homomorphism out of the kernel lattice, stored by its values on
/// the canonical basis rows; this is the character-side form of a
/// reduced resolvend.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomOnAgh<V: MultValue> {
    lattice: AghLattice,
    values: Vec<V>,
}

impl<V: MultValue> HomOnAgh<V> {
    pub fn new(lattice: AghLattice, values: Vec<V>) -> Self {
        assert_eq!(values.len(), lattice.rank());
        HomOnAgh { lattice, values }
    }

    pub fn lattice(&self) -> &AghLattice {
        &self.lattice
    }

    pub fn basis_values(&self) -> &[V] {
        &self.values
    }

    pub fn eval(&self, psi: &CharCombo) -> Result<V> {
        let coords = self
            .lattice
            .coordinates(psi)
            .ok_or(Error::NotInKernelLattice)?;
        let mut acc = self.values[0].powi(0)?;
        for (v, c) in self.values.iter().zip(&coords) {
            if c.is_zero() {
                continue;
            }
            let k = i64::try_from(c).map_err(|_| {
                Error::Precondition("evaluation exponent out of range".into())
            })?;
            acc = acc.mul(&v.powi(k)?);
        }
        Ok(acc)
    }

    pub fn mul(&self, other: &HomOnAgh<V>) -> Result<HomOnAgh<V>> {
        if self.lattice != other.lattice {
            return Err(Error::GroupMismatch);
        }
        Ok(HomOnAgh {
            lattice: self.lattice.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.mul(b))
                .collect(),
        })
    }

    pub fn inv(&self) -> Result<HomOnAgh<V>> {
        Ok(HomOnAgh {
            lattice: self.lattice.clone(),
            values: self
                .values
                .iter()
                .map(|v| v.inv())
                .collect::<Result<Vec<_>>>()?,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.values.iter().all(|v| v.is_one())
    }
}

/// Packages psi -> transpose(f, psi) as a homomorphism on the kernel
/// lattice by evaluating on the basis rows.
pub fn transpose_as_hom<V: MultValue>(
    f: &LambdaMap<V>,
    lattice: &AghLattice,
) -> Result<HomOnAgh<V>> {
    let values = (0..lattice.rank())
        .map(|i| transpose(f, &lattice.basis_combo(i), lattice))
        .collect::<Result<Vec<_>>>()?;
    Ok(HomOnAgh::new(lattice.clone(), values))
}

/// Character-side form of a reduced resolvend: the functional
/// psi -> prod_chi phi(chi)^(n_chi) on the kernel lattice, which is
/// independent of the coset representative.
pub fn functional_of_reduced(r: &ReducedResolvend, lattice: &AghLattice) -> Result<HomOnAgh<CycloElem>> {
    let rep = r.representative();
    let char_values = rep.char_values();
    let mut values = Vec::with_capacity(lattice.rank());
    for i in 0..lattice.rank() {
        let psi = lattice.basis_combo(i);
        let ints = psi.integer_coeffs().expect("basis rows are integral");
        let mut acc = CycloElem::one(rep.conductor());
        for (v, c) in char_values.iter().zip(&ints) {
            if c.is_zero() {
                continue;
            }
            let k = i64::try_from(c).map_err(|_| {
                Error::Precondition("functional exponent out of range".into())
            })?;
            acc = acc.mul(&v.pow(k)?);
        }
        values.push(acc);
    }
    Ok(HomOnAgh::new(lattice.clone(), values))
}

/// The homomorphism associated to the transpose of a monomial-valued
/// Lambda-map. Values must lie in the subgroup generated by
/// zeta_n^exp(G): exactly then the radical lift of the transpose stays
/// inside Q(zeta_n) and the twisted quotients can be computed without
/// leaving the model field. The lift has character values
/// prod_s f(s)^(<chi, s>), and the associated homomorphism sends u to
/// the group element matching every quotient u(phi(chi^(u^-1))) / phi(chi).
pub fn monomial_lambda_associated_hom(
    f: &LambdaMap<CycloElem>,
    model: &GaloisModel,
) -> Result<UnitHom> {
    let group = f.group().clone();
    let m = group.exponent();
    let n = model.n;
    if m > 1 && n % (2 * m) != 0 {
        return Err(Error::Precondition(
            "conductor must be divisible by twice the group exponent".into(),
        ));
    }
    // match every value against powers of zeta_n with exponent divisible
    // by m, so fractional Stickelberger exponents stay integral
    let mut exps: Vec<i64> = Vec::with_capacity(group.order() as usize);
    for v in f.values() {
        let mut found = None;
        for e in 0..n {
            if m > 1 && e % m != 0 {
                continue;
            }
            if *v == CycloElem::zeta_pow(n, e as i64) {
                found = Some(e as i64);
                break;
            }
        }
        match found {
            Some(e) => exps.push(e),
            None => {
                return Err(Error::Precondition(
                    "value is not an exp(G)-th power of a root of unity".into(),
                ))
            }
        }
    }
    if m <= 1 {
        return Ok(UnitHom::trivial(model, &group));
    }
    // lift exponents: E(chi) with phi(chi) = zeta_n^E(chi)
    let chars = group.characters();
    let elems = group.elements();
    let lift_exp = |chi: &Character| -> i64 {
        let mut acc: i64 = 0;
        for (s, &e) in elems.iter().zip(&exps) {
            let (v, ord) = char_eval(chi, s).expect("same group");
            debug_assert_eq!((e * v as i64) % ord as i64, 0);
            acc = (acc + e * v as i64 / ord as i64).rem_euclid(n as i64);
        }
        acc
    };
    let lifts: Vec<i64> = chars.iter().map(lift_exp).collect();
    let mut values = Vec::with_capacity(model.gamma().len());
    for &u in model.gamma() {
        let u_inv = mod_inv(u % m, m).ok_or(Error::NotAUnit(u, m))? as i64;
        let mut found = None;
        'cand: for t in elems.iter() {
            for (ci, chi) in chars.iter().enumerate() {
                let twisted = chi.pow(u_inv);
                let tj = group.index_of(&group.elem(
                    &twisted.coords().iter().map(|&x| x as i64).collect::<Vec<_>>(),
                ));
                let quotient = (u as i64 * lifts[tj] - lifts[ci]).rem_euclid(n as i64);
                let expected = ((n / m) as i64 * chi.eval_exponent(t).expect("same group") as i64)
                    .rem_euclid(n as i64);
                if quotient != expected {
                    continue 'cand;
                }
            }
            found = Some(t.clone());
            break;
        }
        match found {
            Some(t) => values.push(t),
            None => return Err(Error::NotInGroup),
        }
    }
    UnitHom::new(model, values)
}
