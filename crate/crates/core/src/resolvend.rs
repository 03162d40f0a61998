//! Finite Galois-algebra models and resolvends: equivariant maps from a
//! finite abelian group into a cyclotomic field, the resolvend map into
//! the group algebra, normal-basis and unramified-unit criteria, reduced
//! resolvends modulo the embedded group, and the homomorphism associated
//! to a reduced resolvend.

use crate::abelian::{FinAbGroup, GroupElem};
use crate::cyclo::{
    self, fixed_field_basis, galois_apply_unit, unit_subgroup_closure, CycloElem,
};
use crate::{Error, Result};
use num::rational::BigRational;

/// Model of a finite Galois extension: the field Q(zeta_n) together with
/// a subgroup Gamma of the units mod n playing the Galois group over the
/// implicit fixed field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisModel {
    pub n: u64,
    gamma: Vec<u64>,
}

impl GaloisModel {
    pub fn new(n: u64, gamma_gens: &[u64]) -> Result<Self> {
        let gamma = unit_subgroup_closure(n, gamma_gens)?;
        Ok(GaloisModel { n, gamma })
    }

    pub fn gamma(&self) -> &[u64] {
        &self.gamma
    }

    pub fn order(&self) -> usize {
        self.gamma.len()
    }

    /// Integral rational basis of the fixed field.
    pub fn base_field_basis(&self) -> Vec<CycloElem> {
        fixed_field_basis(self.n, &self.gamma)
    }

    pub fn is_base_field_elem(&self, x: &CycloElem) -> bool {
        self.gamma.iter().all(|&u| galois_apply_unit(u, x) == *x)
    }
}

/// Homomorphism from the unit-group model Gamma into G, stored as one
/// value per element of Gamma; the constructor certifies multiplicativity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitHom {
    n: u64,
    gamma: Vec<u64>,
    values: Vec<GroupElem>,
}

impl UnitHom {
    pub fn new(model: &GaloisModel, values: Vec<GroupElem>) -> Result<Self> {
        if values.len() != model.gamma.len() {
            return Err(Error::NotMultiplicative);
        }
        let h = UnitHom {
            n: model.n,
            gamma: model.gamma.clone(),
            values,
        };
        for &a in &h.gamma {
            for &b in &h.gamma {
                let lhs = h.apply(a * b % model.n);
                let rhs = h.apply(a).add(&h.apply(b))?;
                if lhs != rhs {
                    return Err(Error::NotMultiplicative);
                }
            }
        }
        Ok(h)
    }

    pub fn trivial(model: &GaloisModel, group: &FinAbGroup) -> Self {
        UnitHom {
            n: model.n,
            gamma: model.gamma.clone(),
            values: vec![group.identity(); model.gamma.len()],
        }
    }

    pub fn group(&self) -> &FinAbGroup {
        self.values[0].group()
    }

    pub fn apply(&self, u: u64) -> GroupElem {
        let pos = self
            .gamma
            .iter()
            .position(|&g| g == u % self.n)
            .expect("unit lies in the model group");
        self.values[pos].clone()
    }

    pub fn gamma(&self) -> &[u64] {
        &self.gamma
    }

    /// Kernel as a list of units.
    pub fn kernel(&self) -> Vec<u64> {
        self.gamma
            .iter()
            .zip(&self.values)
            .filter(|(_, v)| v.is_identity())
            .map(|(&u, _)| u)
            .collect()
    }

    /// Image of Gamma in G, without repetition.
    pub fn image(&self) -> Vec<GroupElem> {
        let mut img: Vec<GroupElem> = Vec::new();
        for v in &self.values {
            if !img.contains(v) {
                img.push(v.clone());
            }
        }
        img
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() as u64 == self.group().order()
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| v.is_identity())
    }

    pub fn mul(&self, other: &UnitHom) -> Result<UnitHom> {
        if self.gamma != other.gamma {
            return Err(Error::GroupMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(UnitHom {
            n: self.n,
            gamma: self.gamma.clone(),
            values,
        })
    }

    /// All homomorphisms Gamma -> G in the model.
    pub fn enumerate(model: &GaloisModel, group: &FinAbGroup) -> Vec<UnitHom> {
        let elems = group.elements();
        let k = model.gamma.len();
        let mut out = Vec::new();
        let mut choice = vec![0usize; k];
        loop {
            let values: Vec<GroupElem> = choice.iter().map(|&i| elems[i].clone()).collect();
            if let Ok(h) = UnitHom::new(model, values) {
                out.push(h);
            }
            let mut i = 0;
            loop {
                if i == k {
                    return out;
                }
                choice[i] += 1;
                if choice[i] < elems.len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }
}

/// Element of the group algebra Q(zeta_n)[G], coefficients indexed by
/// the canonical enumeration of G.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgElem {
    n: u64,
    group: FinAbGroup,
    coeffs: Vec<CycloElem>,
}

impl AlgElem {
    pub fn zero(n: u64, group: &FinAbGroup) -> Self {
        AlgElem {
            n,
            group: group.clone(),
            coeffs: vec![CycloElem::zero(n); group.order() as usize],
        }
    }

    pub fn one(n: u64, group: &FinAbGroup) -> Self {
        AlgElem::from_group_elem(n, &group.identity())
    }

    pub fn from_group_elem(n: u64, t: &GroupElem) -> Self {
        let group = t.group().clone();
        let mut e = AlgElem::zero(n, &group);
        let idx = group.index_of(t);
        e.coeffs[idx] = CycloElem::one(n);
        e
    }

    pub fn from_coeffs(n: u64, group: &FinAbGroup, coeffs: Vec<CycloElem>) -> Self {
        assert_eq!(coeffs.len(), group.order() as usize);
        AlgElem {
            n,
            group: group.clone(),
            coeffs,
        }
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn coeff(&self, t: &GroupElem) -> &CycloElem {
        &self.coeffs[self.group.index_of(t)]
    }

    pub fn coeffs(&self) -> &[CycloElem] {
        &self.coeffs
    }

    pub fn add(&self, other: &AlgElem) -> AlgElem {
        assert_eq!(self.group, other.group);
        AlgElem {
            n: self.n,
            group: self.group.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn mul(&self, other: &AlgElem) -> AlgElem {
        assert_eq!(self.group, other.group);
        let elems = self.group.elements();
        let mut out = AlgElem::zero(self.n, &self.group);
        for (i, s) in elems.iter().enumerate() {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for (j, t) in elems.iter().enumerate() {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                let st = s.add(t).expect("same group");
                let k = self.group.index_of(&st);
                out.coeffs[k] = out.coeffs[k].add(&self.coeffs[i].mul(&other.coeffs[j]));
            }
        }
        out
    }

    pub fn scale(&self, c: &CycloElem) -> AlgElem {
        AlgElem {
            n: self.n,
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Coefficientwise Galois action; the group itself is fixed.
    pub fn galois(&self, u: u64) -> AlgElem {
        AlgElem {
            n: self.n,
            group: self.group.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|a| galois_apply_unit(u, a))
                .collect(),
        }
    }

    /// chi(t) (or its inverse) as an element of Q(zeta_n); requires
    /// exp(G) | n.
    fn char_root(&self, chi: &crate::abelian::Character, t: &GroupElem, invert: bool) -> CycloElem {
        let m = self.group.exponent();
        debug_assert!(m <= 1 || self.n % m == 0, "exp(G) must divide the conductor");
        if m <= 1 {
            return CycloElem::one(self.n);
        }
        let e = chi.eval_exponent(t).expect("same group") as i64;
        let e = if invert { -e } else { e };
        CycloElem::zeta_pow(self.n, (self.n / m) as i64 * e)
    }

    /// The value sum_t coeff(t) chi(t).
    pub fn char_value(&self, chi: &crate::abelian::Character) -> CycloElem {
        let elems = self.group.elements();
        let mut acc = CycloElem::zero(self.n);
        for (i, t) in elems.iter().enumerate() {
            if !self.coeffs[i].is_zero() {
                acc = acc.add(&self.coeffs[i].mul(&self.char_root(chi, t, false)));
            }
        }
        acc
    }

    /// Character values in the canonical character enumeration order.
    pub fn char_values(&self) -> Vec<CycloElem> {
        self.group
            .characters()
            .iter()
            .map(|chi| self.char_value(chi))
            .collect()
    }

    pub fn is_unit(&self) -> bool {
        self.char_values().iter().all(|v| !v.is_zero())
    }

    /// Inverse computed on the character side and Fourier-inverted.
    pub fn inv(&self) -> Result<AlgElem> {
        let chars = self.group.characters();
        let values = self.char_values();
        let mut inv_values = Vec::with_capacity(values.len());
        for v in &values {
            if v.is_zero() {
                return Err(Error::NotInvertible);
            }
            inv_values.push(v.inv()?);
        }
        let order = BigRational::from_integer(self.group.order().into());
        let elems = self.group.elements();
        let mut coeffs = Vec::with_capacity(elems.len());
        for t in &elems {
            let mut acc = CycloElem::zero(self.n);
            for (chi, w) in chars.iter().zip(&inv_values) {
                acc = acc.add(&w.mul(&self.char_root(chi, t, true)));
            }
            coeffs.push(acc.scale(&order.recip()));
        }
        Ok(AlgElem {
            n: self.n,
            group: self.group.clone(),
            coeffs,
        })
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integral())
    }

    /// If this element is a single embedded group element, return it.
    pub fn as_group_elem(&self) -> Option<GroupElem> {
        let mut found = None;
        for (i, t) in self.group.elements().iter().enumerate() {
            if self.coeffs[i].is_zero() {
                continue;
            }
            if !self.coeffs[i].is_one() || found.is_some() {
                return None;
            }
            found = Some(t.clone());
        }
        found
    }
}

/// Map from G into the field of a Galois model; values indexed by the
/// canonical enumeration of G.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapGE {
    model: GaloisModel,
    group: FinAbGroup,
    values: Vec<CycloElem>,
}

impl MapGE {
    pub fn new(model: &GaloisModel, group: &FinAbGroup, values: Vec<CycloElem>) -> Self {
        assert_eq!(values.len(), group.order() as usize);
        assert!(
            group.exponent() <= 1 || model.n % group.exponent() == 0,
            "exp(G) must divide the model conductor"
        );
        MapGE {
            model: model.clone(),
            group: group.clone(),
            values,
        }
    }

    pub fn indicator_of_identity(model: &GaloisModel, group: &FinAbGroup) -> Self {
        let mut values = vec![CycloElem::zero(model.n); group.order() as usize];
        values[group.index_of(&group.identity())] = CycloElem::one(model.n);
        MapGE::new(model, group, values)
    }

    pub fn model(&self) -> &GaloisModel {
        &self.model
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn value(&self, s: &GroupElem) -> &CycloElem {
        &self.values[self.group.index_of(s)]
    }

    pub fn values(&self) -> &[CycloElem] {
        &self.values
    }

    /// The translate s.a with (s.a)(t) = a(t + s).
    pub fn translate(&self, s: &GroupElem) -> MapGE {
        let values = self
            .group
            .elements()
            .iter()
            .map(|t| self.value(&t.add(s).expect("same group")).clone())
            .collect();
        MapGE {
            model: self.model.clone(),
            group: self.group.clone(),
            values,
        }
    }

    /// Flatten to one long rational vector (used by the span oracle).
    pub fn to_rational_vec(&self) -> Vec<BigRational> {
        self.values
            .iter()
            .flat_map(|v| v.to_rational_vec())
            .collect()
    }

    pub fn scale(&self, c: &CycloElem) -> MapGE {
        MapGE {
            model: self.model.clone(),
            group: self.group.clone(),
            values: self.values.iter().map(|v| v.mul(c)).collect(),
        }
    }
}

/// The resolvend map: r(a) = sum_s a(s) s^{-1}.
pub fn resolvend(a: &MapGE) -> AlgElem {
    let group = a.group().clone();
    let mut out = AlgElem::zero(a.model().n, &group);
    for s in group.elements() {
        let idx = group.index_of(&s.neg());
        let updated = out.coeffs[idx].add(a.value(&s));
        out.coeffs[idx] = updated;
    }
    out
}

/// Inverse of the resolvend map.
pub fn map_of_resolvend(model: &GaloisModel, r: &AlgElem) -> MapGE {
    let group = r.group().clone();
    let values = group
        .elements()
        .iter()
        .map(|s| r.coeff(&s.neg()).clone())
        .collect();
    MapGE::new(model, &group, values)
}

/// Membership test for the Galois algebra attached to h: the map must
/// intertwine the twisted action on G with the Galois action on values.
pub fn membership_fh(a: &MapGE, h: &UnitHom) -> bool {
    let group = a.group();
    for &u in a.model().gamma() {
        let hu = h.apply(u);
        for s in group.elements() {
            let ts = hu.add(&s).expect("same group");
            if a.value(&ts) != &galois_apply_unit(u, a.value(&s)) {
                return false;
            }
        }
    }
    true
}

/// Resolvend-side equivariance: u . r(a) = r(a) h(u) for all u.
pub fn resol1_check(a: &MapGE, h: &UnitHom) -> bool {
    let r = resolvend(a);
    a.model().gamma().iter().all(|&u| {
        let lhs = r.galois(u);
        let rhs = r.mul(&AlgElem::from_group_elem(a.model().n, &h.apply(u)));
        lhs == rhs
    })
}

/// Normal-basis criterion: the resolvend must be a unit of the group
/// algebra, i.e. every character value is nonzero.
pub fn is_normal_basis_gen(a: &MapGE, h: &UnitHom) -> Result<bool> {
    if !membership_fh(a, h) {
        return Err(Error::Precondition(
            "map does not lie in the Galois algebra of h".into(),
        ));
    }
    Ok(resolvend(a).is_unit())
}

/// Independent route for the normal-basis criterion: the translates
/// s.a must span the Galois algebra over the base field, tested as a
/// rational rank with the base field expanded along its own basis.
pub fn spans_over_base(a: &MapGE) -> bool {
    let base = a.model().base_field_basis();
    let group = a.group().clone();
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for s in group.elements() {
        let tr = a.translate(&s);
        for f in &base {
            rows.push(tr.scale(f).to_rational_vec());
        }
    }
    let target = group.order() as usize * base.len();
    crate::linalg::rat_rank(&rows) == target
}

/// Unramified-unit criterion: the resolvend and its inverse must both
/// have integral coefficients.
pub fn is_unramified_unit(a: &MapGE, h: &UnitHom) -> Result<bool> {
    if !membership_fh(a, h) {
        return Err(Error::Precondition(
            "map does not lie in the Galois algebra of h".into(),
        ));
    }
    let r = resolvend(a);
    if !r.is_integral() || !r.is_unit() {
        return Ok(false);
    }
    Ok(r.inv()?.is_integral())
}

/// Resolvend coset modulo the embedded group, held by its canonical
/// representative: the lexicographically least coefficient table among
/// the |G| translates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedResolvend {
    rep: AlgElem,
}

impl ReducedResolvend {
    /// Reduce a unit resolvend modulo G.
    pub fn new(r: AlgElem) -> Result<Self> {
        if !r.is_unit() {
            return Err(Error::NotInvertible);
        }
        let group = r.group().clone();
        let n = r.conductor();
        let mut best: Option<AlgElem> = None;
        for t in group.elements() {
            let cand = r.mul(&AlgElem::from_group_elem(n, &t));
            let better = match &best {
                None => true,
                Some(b) => key(&cand) < key(b),
            };
            if better {
                best = Some(cand);
            }
        }
        Ok(ReducedResolvend {
            rep: best.expect("group is nonempty"),
        })
    }

    pub fn identity(n: u64, group: &FinAbGroup) -> Self {
        ReducedResolvend::new(AlgElem::one(n, group)).expect("1 is a unit")
    }

    pub fn representative(&self) -> &AlgElem {
        &self.rep
    }

    pub fn mul(&self, other: &ReducedResolvend) -> Result<ReducedResolvend> {
        ReducedResolvend::new(self.rep.mul(&other.rep))
    }

    pub fn inv(&self) -> Result<ReducedResolvend> {
        ReducedResolvend::new(self.rep.inv()?)
    }

    pub fn is_identity_coset(&self) -> bool {
        self.rep.as_group_elem().is_some()
    }
}

fn key(r: &AlgElem) -> Vec<Vec<BigRational>> {
    r.coeffs().iter().map(|c| c.to_rational_vec()).collect()
}

/// The reduction map on units of the base group algebra: a unit with
/// base-field coefficients maps to its coset, whose associated
/// homomorphism is trivial.
pub fn rag(model: &GaloisModel, beta: &AlgElem) -> Result<ReducedResolvend> {
    for c in beta.coeffs() {
        if !model.is_base_field_elem(c) {
            return Err(Error::Precondition(
                "rag expects base-field coefficients".into(),
            ));
        }
    }
    if !beta.is_unit() {
        return Err(Error::NotInvertible);
    }
    ReducedResolvend::new(beta.clone())
}

/// The homomorphism u -> r^{-1} (u . r) associated to a reduced
/// resolvend; errors if some quotient is not an embedded group element.
pub fn associated_hom(r: &ReducedResolvend, model: &GaloisModel) -> Result<UnitHom> {
    let rep = r.representative();
    let inv = rep.inv()?;
    let mut values = Vec::with_capacity(model.gamma().len());
    for &u in model.gamma() {
        let q = inv.mul(&rep.galois(u));
        match q.as_group_elem() {
            Some(t) => values.push(t),
            None => return Err(Error::NotInGroup),
        }
    }
    UnitHom::new(model, values)
}

/// Coset representatives of h(Gamma)\G in enumeration order, identity
/// first.
pub fn coset_reps(h: &UnitHom) -> Vec<GroupElem> {
    let group = h.group().clone();
    let img = h.image();
    let mut seen: Vec<GroupElem> = Vec::new();
    let mut reps = Vec::new();
    for s in group.elements() {
        if seen.contains(&s) {
            continue;
        }
        reps.push(s.clone());
        for t in &img {
            seen.push(s.add(t).expect("same group"));
        }
    }
    reps
}

/// Builds a member of the Galois algebra of h from one field value per
/// coset representative, extended by equivariance. Each value must be
/// fixed by the kernel of h.
pub fn equivariant_extend(
    model: &GaloisModel,
    h: &UnitHom,
    reps: &[GroupElem],
    rep_values: &[CycloElem],
) -> Result<MapGE> {
    let group = h.group().clone();
    assert_eq!(reps.len(), rep_values.len());
    let kernel = h.kernel();
    for v in rep_values {
        if !cyclo::fixed_subfield_check(v, &kernel)? {
            return Err(Error::Precondition(
                "representative value not fixed by ker(h)".into(),
            ));
        }
    }
    let mut values: Vec<Option<CycloElem>> = vec![None; group.order() as usize];
    for (rep, val) in reps.iter().zip(rep_values) {
        for &u in model.gamma() {
            let s = h.apply(u).add(rep)?;
            let idx = group.index_of(&s);
            let v = galois_apply_unit(u, val);
            match &values[idx] {
                None => values[idx] = Some(v),
                Some(prev) => {
                    if prev != &v {
                        return Err(Error::Precondition(
                            "inconsistent equivariant extension".into(),
                        ));
                    }
                }
            }
        }
    }
    let values: Option<Vec<CycloElem>> = values.into_iter().collect();
    match values {
        Some(values) => Ok(MapGE::new(model, &group, values)),
        None => Err(Error::Precondition(
            "representatives do not cover all cosets".into(),
        )),
    }
}

/// Deterministic bounded search for a normal-basis generator of the
/// Galois algebra of h: candidate values on coset representatives are
/// integer combinations of the kernel fixed-field basis, enumerated by
/// increasing coefficient radius, first hit wins.
pub fn find_normal_basis_gen(h: &UnitHom, model: &GaloisModel, bound: usize) -> Result<MapGE> {
    if bound == 0 {
        return Err(Error::SearchExhausted(0));
    }
    let reps = coset_reps(h);
    let kernel = h.kernel();
    let basis = fixed_field_basis(model.n, &kernel);
    let slots = reps.len() * basis.len();

    // digits ordered 0, 1, -1, 2, -2, ...
    let digit = |d: usize| -> i64 {
        if d == 0 {
            0
        } else if d % 2 == 1 {
            (d as i64 + 1) / 2
        } else {
            -(d as i64 / 2)
        }
    };

    for radius in 1..=bound {
        let digits = 2 * radius + 1;
        let mut counter = vec![0usize; slots];
        loop {
            // only tuples whose largest digit index reaches this radius
            // are new at this level
            if counter.iter().any(|&d| d >= 2 * (radius - 1) + 1) {
                let mut rep_values = Vec::with_capacity(reps.len());
                for i in 0..reps.len() {
                    let mut v = CycloElem::zero(model.n);
                    for (j, b) in basis.iter().enumerate() {
                        let c = digit(counter[i * basis.len() + j]);
                        if c != 0 {
                            v = v.add(&b.scale(&BigRational::from_integer(c.into())));
                        }
                    }
                    rep_values.push(v);
                }
                if let Ok(a) = equivariant_extend(model, h, &reps, &rep_values) {
                    if resolvend(&a).is_unit() {
                        return Ok(a);
                    }
                }
            }
            // odometer, first slot fastest
            let mut i = 0;
            let mut rolled_over = true;
            while i < slots {
                counter[i] += 1;
                if counter[i] < digits {
                    rolled_over = false;
                    break;
                }
                counter[i] = 0;
                i += 1;
            }
            if rolled_over {
                break;
            }
        }
    }
    Err(Error::SearchExhausted(bound))
}

/// All homomorphisms realized by the model; used by exactness sweeps.
pub fn enumerate_tame_homs(model: &GaloisModel, group: &FinAbGroup) -> Vec<UnitHom> {
    UnitHom::enumerate(model, group)
}
