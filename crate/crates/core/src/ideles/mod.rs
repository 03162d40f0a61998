//! Finite place systems over a model Galois extension, restricted
//! product containers for the three idele groups, the diagonal and
//! transport maps between them, and the verifiers for the realizability
//! equation, the congruence condition, the approximation search, and
//! weak multiplicativity.

pub mod local;

pub use local::{
    factorize, is_unramified, local_homs, local_lambda_is_equivariant,
    local_transpose_resolvend, prime_f, LocalMultValue, LocalTameGroup, LocalTameHom,
};

use crate::abelian::{elem_order, FinAbGroup, GroupElem, SigmaAction};
use crate::cohomology::FiniteTameModel;
use crate::cyclo::CycloElem;
use crate::resolvend::{
    is_normal_basis_gen, map_of_resolvend, resolvend, GaloisModel, MapGE, ReducedResolvend,
    UnitHom,
};
use crate::stickelberger::{
    transpose_as_hom, AghLattice, HomOnAgh, LambdaMap, MultValue,
};
use crate::{Error, Result};
use std::collections::BTreeMap;

/// One base place of the system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasePlace {
    pub label: String,
    pub q: u64,
    pub p: u64,
    pub ramified: bool,
    pub unif: u32,
    /// indices into the extension places lying over this place; the
    /// first is the distinguished one
    pub fiber: Vec<usize>,
    /// decomposition subgroup of Sigma for this fiber
    pub decomposition: Vec<usize>,
}

/// One extension place.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtPlace {
    pub label: String,
    pub base: usize,
    /// the Sigma element moving the distinguished place here
    pub gamma: usize,
    /// total-group element chosen as its lift
    pub gamma_lift: usize,
    pub q: u64,
    pub p: u64,
    pub ramified: bool,
    pub unif: u32,
}

/// Specification of one base place and its fiber.
#[derive(Debug, Clone)]
pub struct FiberSpec {
    pub label: String,
    pub q: u64,
    pub ramified: bool,
    pub residue_degree: u32,
    /// Sigma indices of the fiber places; must start with the identity
    pub gammas: Vec<usize>,
    /// decomposition subgroup (Sigma indices)
    pub decomposition: Vec<usize>,
}

/// A finite model of the places of an extension: base places, fibers
/// with distinguished places and transport elements, and the tame local
/// data at each place.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaceSystem {
    tower: FiniteTameModel,
    group: FinAbGroup,
    base: Vec<BasePlace>,
    ext: Vec<ExtPlace>,
}

impl PlaceSystem {
    pub fn new(tower: FiniteTameModel, group: FinAbGroup, specs: &[FiberSpec]) -> Result<Self> {
        let real = tower
            .realization()
            .ok_or_else(|| Error::Precondition("place systems need a realized tower".into()))?
            .clone();
        let n = real.n;
        if group.exponent() > 1 && n % group.exponent() != 0 {
            return Err(Error::Precondition(
                "conductor must be divisible by exp(G)".into(),
            ));
        }
        let sigma = tower.sigma().clone();
        let mut base = Vec::new();
        let mut ext = Vec::new();
        for (wi, spec) in specs.iter().enumerate() {
            let ltg = LocalTameGroup::new(spec.q)?;
            if crate::abelian::mod_inv(spec.q % n, n).is_none() {
                return Err(Error::Precondition(format!(
                    "residue size {} shares a factor with the conductor {}",
                    spec.q, n
                )));
            }
            // Frobenius coherence with the tower is only meaningful at
            // unramified fibers; ramified local data is chosen freely
            let q_ext = spec.q.pow(spec.residue_degree);
            if !spec.ramified {
                let gt_units: Vec<u64> = (0..tower.total().order())
                    .map(|i| real.units[i])
                    .collect();
                if !gt_units.contains(&(spec.q % n)) {
                    return Err(Error::Precondition(format!(
                        "base Frobenius {} mod {} outside the total model",
                        spec.q, n
                    )));
                }
                let omega_units: Vec<u64> =
                    tower.omega().iter().map(|&i| real.units[i]).collect();
                if !omega_units.contains(&(q_ext % n)) {
                    return Err(Error::Precondition(format!(
                        "extension Frobenius {} mod {} outside the omega model",
                        q_ext, n
                    )));
                }
            }
            // transversal check
            if spec.gammas.first() != Some(&0) {
                return Err(Error::Precondition(
                    "the distinguished place must carry the identity".into(),
                ));
            }
            if !sigma_is_subgroup(&sigma, &spec.decomposition) {
                return Err(Error::Precondition(
                    "decomposition set is not a subgroup".into(),
                ));
            }
            if spec.gammas.len() * spec.decomposition.len() != sigma.order() {
                return Err(Error::Precondition(
                    "fiber size times decomposition order must equal |Sigma|".into(),
                ));
            }
            let mut covered = std::collections::HashSet::new();
            for &g in &spec.gammas {
                for &d in &spec.decomposition {
                    if !covered.insert(sigma.op(g, d)) {
                        return Err(Error::Precondition(
                            "fiber gammas are not a transversal of the decomposition group".into(),
                        ));
                    }
                }
            }
            let fiber_start = ext.len();
            for (slot, &g) in spec.gammas.iter().enumerate() {
                ext.push(ExtPlace {
                    label: format!("{}.{}", spec.label, slot),
                    base: wi,
                    gamma: g,
                    gamma_lift: tower.lift(g),
                    q: q_ext,
                    p: ltg.p,
                    ramified: spec.ramified,
                    unif: 0, // assigned below
                });
            }
            base.push(BasePlace {
                label: spec.label.clone(),
                q: spec.q,
                p: ltg.p,
                ramified: spec.ramified,
                unif: wi as u32,
                fiber: (fiber_start..ext.len()).collect(),
                decomposition: spec.decomposition.clone(),
            });
        }
        let nbase = base.len() as u32;
        for (vi, e) in ext.iter_mut().enumerate() {
            e.unif = nbase + vi as u32;
        }
        Ok(PlaceSystem {
            tower,
            group,
            base,
            ext,
        })
    }

    pub fn tower(&self) -> &FiniteTameModel {
        &self.tower
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn conductor(&self) -> u64 {
        self.tower.realization().expect("realized").n
    }

    pub fn base_places(&self) -> &[BasePlace] {
        &self.base
    }

    pub fn ext_places(&self) -> &[ExtPlace] {
        &self.ext
    }

    pub fn distinguished(&self, w: usize) -> usize {
        self.base[w].fiber[0]
    }

    /// The unit realizing the chosen lift of gamma_v.
    pub fn gamma_lift_unit(&self, v: usize) -> u64 {
        self.tower.realization().expect("realized").units[self.ext[v].gamma_lift]
    }

    /// All extension Frobenii lie in the omega model; flag scenarios
    /// additionally need every residue size congruent to 1 modulo the
    /// group exponent.
    pub fn roots_of_unity_flag_consistent(&self) -> bool {
        let m = self.group.exponent();
        if m <= 1 {
            return true;
        }
        self.base.iter().all(|w| w.q % m == 1) && self.ext.iter().all(|v| v.q % m == 1)
    }

    /// The Sigma action on a fiber: delta sends the place with
    /// transversal element g to the place representing delta g.
    pub fn sigma_act_on_fiber(&self, w: usize, delta: usize, v: usize) -> usize {
        let sigma = self.tower.sigma();
        let target = sigma.op(delta, self.ext[v].gamma);
        for &v2 in &self.base[w].fiber {
            for &d in &self.base[w].decomposition {
                if sigma.op(self.ext[v2].gamma, d) == target {
                    return v2;
                }
            }
        }
        unreachable!("transversal covers Sigma")
    }

    pub fn place_count(&self, level: Level) -> usize {
        match level {
            Level::Base => self.base.len(),
            Level::Ext => self.ext.len(),
        }
    }

    pub fn place_q(&self, level: Level, i: usize) -> u64 {
        match level {
            Level::Base => self.base[i].q,
            Level::Ext => self.ext[i].q,
        }
    }

    pub fn place_p(&self, level: Level, i: usize) -> u64 {
        match level {
            Level::Base => self.base[i].p,
            Level::Ext => self.ext[i].p,
        }
    }

    pub fn place_unif(&self, level: Level, i: usize) -> u32 {
        match level {
            Level::Base => self.base[i].unif,
            Level::Ext => self.ext[i].unif,
        }
    }

    pub fn place_label(&self, level: Level, i: usize) -> &str {
        match level {
            Level::Base => &self.base[i].label,
            Level::Ext => &self.ext[i].label,
        }
    }
}

fn sigma_is_subgroup(sigma: &crate::finite_group::FiniteGroup, elems: &[usize]) -> bool {
    sigma.is_subgroup(elems)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Base,
    Ext,
}

/// Which restricted product a vector belongs to: unit group ideles of
/// the group algebra, the Lambda space, or reduced-resolvend classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdeleKind {
    GroupAlgebra,
    Lambda,
    ResolvendClass,
}

/// Restricted-product vector: finitely many explicit components, all
/// other places implicitly the identity of the designated subgroup.
/// Component vectors are indexed by characters (group-algebra kind),
/// group elements (Lambda kind), or kernel-lattice basis rows
/// (resolvend-class kind).
#[derive(Debug, Clone, PartialEq)]
pub struct IdeleVector {
    pub kind: IdeleKind,
    pub level: Level,
    width: usize,
    components: BTreeMap<usize, Vec<LocalMultValue>>,
}

impl IdeleVector {
    pub fn ones(kind: IdeleKind, level: Level, width: usize) -> Self {
        IdeleVector {
            kind,
            level,
            width,
            components: BTreeMap::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn set_component(&mut self, place: usize, values: Vec<LocalMultValue>) {
        assert_eq!(values.len(), self.width);
        if values.iter().all(|v| v.is_one()) {
            self.components.remove(&place);
        } else {
            self.components.insert(place, values);
        }
    }

    pub fn component(&self, place: usize) -> Option<&Vec<LocalMultValue>> {
        self.components.get(&place)
    }

    /// Component at a place, materializing the implicit identity.
    pub fn component_or_ones(&self, place: usize, n: u64) -> Vec<LocalMultValue> {
        self.components
            .get(&place)
            .cloned()
            .unwrap_or_else(|| vec![LocalMultValue::one(n); self.width])
    }

    pub fn support(&self) -> Vec<usize> {
        self.components.keys().copied().collect()
    }

    pub fn mul(&self, other: &IdeleVector) -> Result<IdeleVector> {
        if self.kind != other.kind || self.level != other.level || self.width != other.width {
            return Err(Error::KindMismatch);
        }
        let mut out = IdeleVector::ones(self.kind, self.level, self.width);
        let keys: std::collections::BTreeSet<usize> = self
            .components
            .keys()
            .chain(other.components.keys())
            .copied()
            .collect();
        for k in keys {
            let values = match (self.components.get(&k), other.components.get(&k)) {
                (Some(a), Some(b)) => a.iter().zip(b).map(|(x, y)| x.mul(y)).collect(),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            };
            out.set_component(k, values);
        }
        Ok(out)
    }

    pub fn inv(&self) -> Result<IdeleVector> {
        let mut out = IdeleVector::ones(self.kind, self.level, self.width);
        for (k, values) in &self.components {
            out.set_component(
                *k,
                values.iter().map(|v| v.inv()).collect::<Result<Vec<_>>>()?,
            );
        }
        Ok(out)
    }

    /// Restricted-product invariant relative to a system: every
    /// explicit component must be finite in count (automatic here) and
    /// every off-support component is a designated unit by construction.
    /// Explicit components at places outside the system are rejected.
    pub fn places_valid(&self, system: &PlaceSystem) -> bool {
        let count = system.place_count(self.level);
        self.components.keys().all(|&k| k < count)
    }

    /// True when the component at the place lies in the designated unit
    /// subgroup.
    pub fn is_unit_component_at(&self, system: &PlaceSystem, place: usize) -> bool {
        let p = system.place_p(self.level, place);
        match self.components.get(&place) {
            None => true,
            Some(values) => values.iter().all(|v| v.is_unit_at(p)),
        }
    }
}

/// Prime element data: one group element per place (identity when
/// absent), realized as the Lambda-map sending it to that place's
/// uniformizer.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimeFElement {
    pub level: Level,
    pub support: BTreeMap<usize, GroupElem>,
}

impl PrimeFElement {
    pub fn identity(level: Level) -> Self {
        PrimeFElement {
            level,
            support: BTreeMap::new(),
        }
    }

    pub fn new(level: Level, support: BTreeMap<usize, GroupElem>) -> Self {
        let support = support
            .into_iter()
            .filter(|(_, s)| !s.is_identity())
            .collect();
        PrimeFElement { level, support }
    }

    pub fn value_at(&self, place: usize, group: &FinAbGroup) -> GroupElem {
        self.support
            .get(&place)
            .cloned()
            .unwrap_or_else(|| group.identity())
    }

    pub fn is_one_at(&self, place: usize) -> bool {
        !self.support.contains_key(&place)
    }

    /// The idele of per-place prime elements; orders are validated
    /// against q - 1 at each supporting place.
    pub fn to_idele(&self, system: &PlaceSystem) -> Result<IdeleVector> {
        let group = system.group().clone();
        let n = system.conductor();
        let mut out = IdeleVector::ones(IdeleKind::Lambda, self.level, group.order() as usize);
        for (&place, s) in &self.support {
            let q = system.place_q(self.level, place);
            let unif = system.place_unif(self.level, place);
            let f = prime_f(s, q, unif, n)?;
            out.set_component(place, f.values().to_vec());
        }
        Ok(out)
    }

    /// Disjoint-support product; overlapping nontrivial support is not
    /// a prime element and is rejected.
    pub fn mul(&self, other: &PrimeFElement) -> Result<PrimeFElement> {
        if self.level != other.level {
            return Err(Error::KindMismatch);
        }
        let mut support = self.support.clone();
        for (k, v) in &other.support {
            if support.contains_key(k) {
                return Err(Error::Precondition(
                    "prime elements overlap at a place".into(),
                ));
            }
            support.insert(*k, v.clone());
        }
        Ok(PrimeFElement {
            level: self.level,
            support,
        })
    }
}

/// Ramification locus of a family of local homomorphisms.
pub fn ramified_set(family: &BTreeMap<usize, LocalTameHom>) -> Vec<usize> {
    family
        .iter()
        .filter(|(_, h)| !h.is_unramified())
        .map(|(&v, _)| v)
        .collect()
}

// ---------------------------------------------------------------------
// diagonal maps

/// The diagonal image of a global group-algebra unit: components are
/// the character values of beta placed at every system place.
pub fn diagonal_algebra(
    system: &PlaceSystem,
    level: Level,
    beta: &crate::resolvend::AlgElem,
) -> Result<IdeleVector> {
    if !beta.is_unit() {
        return Err(Error::NotInvertible);
    }
    let values: Vec<LocalMultValue> = beta
        .char_values()
        .into_iter()
        .map(LocalMultValue::from_unit)
        .collect();
    let mut out = IdeleVector::ones(
        IdeleKind::GroupAlgebra,
        level,
        system.group().order() as usize,
    );
    for i in 0..system.place_count(level) {
        out.set_component(i, values.clone());
    }
    Ok(out)
}

/// The diagonal image of a global Lambda-map.
pub fn diagonal_lambda(
    system: &PlaceSystem,
    level: Level,
    f: &LambdaMap<CycloElem>,
) -> Result<IdeleVector> {
    let values: Vec<LocalMultValue> = f
        .values()
        .iter()
        .map(|v| {
            if v.is_zero() {
                Err(Error::NotInvertible)
            } else {
                Ok(LocalMultValue::from_unit(v.clone()))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = IdeleVector::ones(IdeleKind::Lambda, level, system.group().order() as usize);
    for i in 0..system.place_count(level) {
        out.set_component(i, values.clone());
    }
    Ok(out)
}

/// The diagonal image of a global reduced-resolvend functional.
pub fn diagonal_functional(
    system: &PlaceSystem,
    level: Level,
    x: &HomOnAgh<CycloElem>,
) -> IdeleVector {
    let values: Vec<LocalMultValue> = x
        .basis_values()
        .iter()
        .map(|v| LocalMultValue::from_unit(v.clone()))
        .collect();
    let mut out = IdeleVector::ones(IdeleKind::ResolvendClass, level, values.len());
    for i in 0..system.place_count(level) {
        out.set_component(i, values.clone());
    }
    out
}

// ---------------------------------------------------------------------
// componentwise maps

/// Componentwise reduction: each group-algebra component becomes the
/// functional it induces on the kernel-lattice basis.
pub fn rag_idele(
    system: &PlaceSystem,
    lattice: &AghLattice,
    c: &IdeleVector,
) -> Result<IdeleVector> {
    if c.kind != IdeleKind::GroupAlgebra {
        return Err(Error::KindMismatch);
    }
    let group = system.group().clone();
    let chars = group.characters();
    let mut out = IdeleVector::ones(IdeleKind::ResolvendClass, c.level, lattice.rank());
    for &place in &c.support() {
        let values = c.component(place).expect("supported");
        let mut fun = Vec::with_capacity(lattice.rank());
        for i in 0..lattice.rank() {
            let psi = lattice.basis_combo(i);
            let ints = psi.integer_coeffs().expect("basis integral");
            let mut acc = values[0].powi(0)?;
            for (j, _chi) in chars.iter().enumerate() {
                if ints[j] == num::BigInt::from(0) {
                    continue;
                }
                let k = i64::try_from(&ints[j])
                    .map_err(|_| Error::Precondition("exponent out of range".into()))?;
                acc = acc.mul(&values[j].powi(k)?);
            }
            fun.push(acc);
        }
        out.set_component(place, fun);
    }
    Ok(out)
}

/// Componentwise transpose: each Lambda component becomes the
/// functional of its transpose.
pub fn theta_idele(
    system: &PlaceSystem,
    lattice: &AghLattice,
    g: &IdeleVector,
) -> Result<IdeleVector> {
    if g.kind != IdeleKind::Lambda {
        return Err(Error::KindMismatch);
    }
    let group = system.group().clone();
    let mut out = IdeleVector::ones(IdeleKind::ResolvendClass, g.level, lattice.rank());
    for &place in &g.support() {
        let f = LambdaMap::new(&group, g.component(place).expect("supported").clone());
        let hom = transpose_as_hom(&f, lattice)?;
        out.set_component(place, hom.basis_values().to_vec());
    }
    Ok(out)
}

/// Lambda transport from the base system to the extension system:
/// nu(g)_v applies the chosen lift of gamma_v to the algebraic part and
/// renames the uniformizer of the base place to that of v. Requires the
/// roots-of-unity flag.
pub fn nu_map(system: &PlaceSystem, g: &IdeleVector, flag_roots_in_base: bool) -> Result<IdeleVector> {
    if !flag_roots_in_base {
        return Err(Error::MissingFlag("roots_of_unity_in_k".into()));
    }
    if g.kind != IdeleKind::Lambda || g.level != Level::Base {
        return Err(Error::KindMismatch);
    }
    transport_to_ext(system, g)
}

/// Resolvend-class transport from the base system to the extension
/// system, componentwise on kernel-lattice values.
pub fn mu_map(system: &PlaceSystem, r: &IdeleVector) -> Result<IdeleVector> {
    if r.kind != IdeleKind::ResolvendClass || r.level != Level::Base {
        return Err(Error::KindMismatch);
    }
    transport_to_ext(system, r)
}

fn transport_to_ext(system: &PlaceSystem, g: &IdeleVector) -> Result<IdeleVector> {
    let mut out = IdeleVector::ones(g.kind, Level::Ext, g.width());
    for (vi, v) in system.ext_places().iter().enumerate() {
        match g.component(v.base) {
            None => continue,
            Some(values) => {
                let lift = system.gamma_lift_unit(vi);
                let moved = values
                    .iter()
                    .map(|x| x.transport(lift, v.unif, v.ramified))
                    .collect::<Result<Vec<_>>>()?;
                out.set_component(vi, moved);
            }
        }
    }
    Ok(out)
}

/// Descent of a prime element: possible exactly when the support
/// vanishes on ramified places and is constant along each fiber; the
/// result is supported at the distinguished values over each base place.
pub fn f_descent(system: &PlaceSystem, f: &PrimeFElement) -> Option<PrimeFElement> {
    if f.level != Level::Ext {
        return None;
    }
    let group = system.group();
    for (wi, w) in system.base_places().iter().enumerate() {
        let dist = system.distinguished(wi);
        let s_dist = f.value_at(dist, group);
        for &v in &w.fiber {
            let sv = f.value_at(v, group);
            if w.ramified && !sv.is_identity() {
                return None;
            }
            if sv != s_dist {
                return None;
            }
        }
    }
    let mut support = BTreeMap::new();
    for (wi, _) in system.base_places().iter().enumerate() {
        let s = f.value_at(system.distinguished(wi), group);
        if !s.is_identity() {
            support.insert(wi, s);
        }
    }
    Some(PrimeFElement::new(Level::Base, support))
}

/// Transport identities for a family of local homomorphisms: the
/// Frobenius images move by gamma_v everywhere, the ramification images
/// move by gamma_v off the ramified set; under a trivial action both
/// say the data is constant along fibers.
pub fn hv_compatibility_check(
    system: &PlaceSystem,
    family: &BTreeMap<usize, LocalTameHom>,
    act: &SigmaAction,
) -> (bool, Vec<String>) {
    let group = system.group();
    let mut all = true;
    let mut reports = Vec::new();
    let hom_at = |v: usize| -> LocalTameHom {
        family
            .get(&v)
            .cloned()
            .unwrap_or_else(|| LocalTameHom::trivial(system.ext_places()[v].q, group))
    };
    for (wi, w) in system.base_places().iter().enumerate() {
        let dist = system.distinguished(wi);
        let h_dist = hom_at(dist);
        for &v in &w.fiber {
            let h_v = hom_at(v);
            let gamma = system.ext_places()[v].gamma;
            let frob_ok = h_v.frob == act.apply(gamma, &h_dist.frob);
            let ram_ok = if w.ramified {
                true
            } else {
                h_v.ram == act.apply(gamma, &h_dist.ram)
            };
            let ok = frob_ok && ram_ok;
            all &= ok;
            reports.push(format!(
                "{} transport {}: frob {} ram {}",
                system.place_label(Level::Ext, v),
                if ok { "PASS" } else { "FAIL" },
                frob_ok,
                ram_ok
            ));
        }
    }
    (all, reports)
}

// ---------------------------------------------------------------------
// the realizability verifier

/// All data entering the realizability equation for one scenario: the
/// global Galois model and homomorphism, a normal-basis witness, the
/// idele c, the unit idele u, the prime element f, and the declared
/// local homomorphism family.
#[derive(Debug, Clone)]
pub struct RealizabilityWitness {
    pub model: GaloisModel,
    pub h_global: UnitHom,
    pub b: MapGE,
    pub c: IdeleVector,
    pub u: IdeleVector,
    pub f: PrimeFElement,
    pub local_family: BTreeMap<usize, LocalTameHom>,
}

/// Per-place outcome of the realizability check.
#[derive(Debug, Clone)]
pub struct PlaceCheck {
    pub place: usize,
    pub label: String,
    pub equation_holds: bool,
    pub f_matches_sigma_value: bool,
    pub f_trivial_iff_unramified: bool,
    pub detail: String,
}

/// The realizability equation, checked value by value on the
/// kernel-lattice basis at every place, together with the two
/// consequences: the prime element is determined by the ramification
/// images, and it is trivial exactly at the unramified places. The
/// class datum j(c) is the idele c itself, echoed as a witness.
pub fn char1_verify(
    system: &PlaceSystem,
    lattice: &AghLattice,
    w: &RealizabilityWitness,
) -> Result<(bool, Vec<PlaceCheck>)> {
    if w.c.kind != IdeleKind::GroupAlgebra
        || w.u.kind != IdeleKind::ResolvendClass
        || w.c.level != Level::Ext
        || w.u.level != Level::Ext
    {
        return Err(Error::KindMismatch);
    }
    if !is_normal_basis_gen(&w.b, &w.h_global)? {
        return Err(Error::Precondition(
            "b is not a normal basis generator for the global homomorphism".into(),
        ));
    }
    // u must be a unit idele
    for &place in &w.u.support() {
        if !w.u.is_unit_component_at(system, place) {
            return Err(Error::Precondition(format!(
                "u has a non-unit component at place {}",
                system.place_label(Level::Ext, place)
            )));
        }
    }
    let n = system.conductor();
    let group = system.group().clone();
    let rr = ReducedResolvend::new(resolvend(&w.b))?;
    let b_fun = crate::stickelberger::functional_of_reduced(&rr, lattice)?;
    let b_inv: Vec<LocalMultValue> = b_fun
        .inv()?
        .basis_values()
        .iter()
        .map(|v| LocalMultValue::from_unit(v.clone()))
        .collect();
    let rag_c = rag_idele(system, lattice, &w.c)?;
    let f_idele = w.f.to_idele(system)?;
    let theta_f = theta_idele(system, lattice, &f_idele)?;

    let mut all = true;
    let mut checks = Vec::new();
    for place in 0..system.place_count(Level::Ext) {
        let lhs = rag_c.component_or_ones(place, n);
        let u_v = w.u.component_or_ones(place, n);
        let t_v = theta_f.component_or_ones(place, n);
        let rhs: Vec<LocalMultValue> = (0..lattice.rank())
            .map(|i| b_inv[i].mul(&u_v[i]).mul(&t_v[i]))
            .collect();
        let equation_holds = lhs == rhs;

        let h_v = w
            .local_family
            .get(&place)
            .cloned()
            .unwrap_or_else(|| LocalTameHom::trivial(system.ext_places()[place].q, &group));
        let s_v = h_v.ram.clone();
        let f_v = w.f.value_at(place, &group);
        let f_matches_sigma_value = f_v == s_v;
        let f_trivial_iff_unramified = w.f.is_one_at(place) == h_v.is_unramified();

        let ok = equation_holds && f_matches_sigma_value && f_trivial_iff_unramified;
        all &= ok;
        checks.push(PlaceCheck {
            place,
            label: system.place_label(Level::Ext, place).to_string(),
            equation_holds,
            f_matches_sigma_value,
            f_trivial_iff_unramified,
            detail: format!(
                "rag(c) = {} | b^-1 u theta(f) = {}",
                lhs.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(", "),
                rhs.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        });
    }
    Ok((all, checks))
}

/// Builds a witness for a scenario: the normal-basis generator is found
/// by bounded search, the prime element is read off the declared
/// ramification images, and c is solved from the equation with the
/// supplied unit lift (identity when absent).
pub fn build_realizability_witness(
    system: &PlaceSystem,
    lattice: &AghLattice,
    model: &GaloisModel,
    h_global: &UnitHom,
    local_family: &BTreeMap<usize, LocalTameHom>,
    u_lift: &BTreeMap<usize, Vec<LocalMultValue>>,
    search_bound: usize,
) -> Result<RealizabilityWitness> {
    let group = system.group().clone();
    let n = system.conductor();
    let b = crate::resolvend::find_normal_basis_gen(h_global, model, search_bound)?;
    let rr = ReducedResolvend::new(resolvend(&b))?;
    let b_fun = crate::stickelberger::functional_of_reduced(&rr, lattice)?;
    // prime element from the ramification images
    let mut support = BTreeMap::new();
    for (&v, h) in local_family {
        if !h.ram.is_identity() {
            support.insert(v, h.ram.clone());
        }
    }
    let f = PrimeFElement::new(Level::Ext, support);

    // resolvent values of b on all characters
    let r_b = resolvend(&b);
    let b_char_values = r_b.char_values();
    let chars = group.characters();

    let mut c = IdeleVector::ones(IdeleKind::GroupAlgebra, Level::Ext, chars.len());
    let mut u = IdeleVector::ones(IdeleKind::ResolvendClass, Level::Ext, lattice.rank());
    for place in 0..system.place_count(Level::Ext) {
        let s_v = f.value_at(place, &group);
        let unif = system.place_unif(Level::Ext, place);
        let lift = u_lift.get(&place);
        // c_v(chi) = phi_b(chi)^{-1} pi^{<chi, s_v>} ulift(chi)
        let mut values = Vec::with_capacity(chars.len());
        for (j, chi) in chars.iter().enumerate() {
            let mut val = LocalMultValue::from_unit(b_char_values[j].inv()?);
            if !s_v.is_identity() {
                let (vv, ord) = crate::abelian::char_eval(chi, &s_v)?;
                let exp = num::rational::BigRational::new(
                    num::BigInt::from(vv),
                    num::BigInt::from(ord),
                );
                val = val.mul(&LocalMultValue::new(CycloElem::one(n), exp, Some(unif)));
            }
            if let Some(l) = lift {
                val = val.mul(&l[j]);
            }
            values.push(val);
        }
        c.set_component(place, values);
        if let Some(l) = lift {
            // the functional of the lift is the u component
            let mut uv = Vec::with_capacity(lattice.rank());
            for i in 0..lattice.rank() {
                let psi = lattice.basis_combo(i);
                let ints = psi.integer_coeffs().expect("basis integral");
                let mut acc = LocalMultValue::one(n);
                for (j, cchi) in ints.iter().enumerate() {
                    let k = i64::try_from(cchi)
                        .map_err(|_| Error::Precondition("exponent out of range".into()))?;
                    if k != 0 {
                        acc = acc.mul(&l[j].powi(k)?);
                    }
                }
                uv.push(acc);
            }
            u.set_component(place, uv);
        }
    }
    let _ = b_fun;
    Ok(RealizabilityWitness {
        model: model.clone(),
        h_global: h_global.clone(),
        b,
        c,
        u,
        f,
        local_family: local_family.clone(),
    })
}

// ---------------------------------------------------------------------
// congruence units and approximation

/// The congruence-unit condition on a Lambda idele: at every supported
/// place, the value at every nonidentity group element is a unit
/// congruent to 1 modulo m with no uniformizer content.
pub fn congruence_unit_check(system: &PlaceSystem, g: &IdeleVector, m: u64) -> Result<bool> {
    if g.kind != IdeleKind::Lambda {
        return Err(Error::KindMismatch);
    }
    let group = system.group().clone();
    let elems = group.elements();
    for &place in &g.support() {
        let values = g.component(place).expect("supported");
        for (i, s) in elems.iter().enumerate() {
            if s.is_identity() {
                continue;
            }
            if !values[i].is_congruence_unit(m) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Outcome of the approximation search: a prime element meeting the
/// constraints, or a report that the finite model exhausted its
/// candidates.
#[derive(Debug, Clone)]
pub enum ApproxOutcome {
    Found(PrimeFElement),
    ModelIncomplete { candidates_tried: usize },
}

/// Brute-force surrogate for the approximation theorem: search the
/// prime elements of the system for one vanishing on T and congruent to
/// g modulo the diagonal units times the congruence subgroup, the
/// congruence membership itself certified by a bounded witness search
/// over the supplied global units. Candidates covering every
/// nonidentity group element in their support are preferred.
pub fn approx_search(
    system: &PlaceSystem,
    g: &IdeleVector,
    t_places: &[usize],
    m: u64,
    global_units: &[LambdaMap<CycloElem>],
) -> Result<ApproxOutcome> {
    if g.kind != IdeleKind::Lambda || g.level != Level::Ext {
        return Err(Error::KindMismatch);
    }
    let group = system.group().clone();
    let n_places = system.place_count(Level::Ext);
    // admissible values per place
    let mut choices: Vec<Vec<GroupElem>> = Vec::new();
    for v in 0..n_places {
        if t_places.contains(&v) {
            choices.push(vec![group.identity()]);
        } else {
            let q = system.place_q(Level::Ext, v);
            choices.push(
                group
                    .elements()
                    .into_iter()
                    .filter(|s| (q - 1) % elem_order(s) == 0)
                    .collect(),
            );
        }
    }
    let mut candidates: Vec<PrimeFElement> = Vec::new();
    let mut counter = vec![0usize; n_places];
    loop {
        let mut support = BTreeMap::new();
        for (v, &ci) in counter.iter().enumerate() {
            let s = &choices[v][ci];
            if !s.is_identity() {
                support.insert(v, s.clone());
            }
        }
        candidates.push(PrimeFElement::new(Level::Ext, support));
        let mut i = 0;
        loop {
            if i == n_places {
                i = usize::MAX;
                break;
            }
            counter[i] += 1;
            if counter[i] < choices[i].len() {
                break;
            }
            counter[i] = 0;
            i += 1;
        }
        if i == usize::MAX {
            break;
        }
    }
    // prefer candidates whose support covers every nonidentity element
    let covers = |f: &PrimeFElement| -> bool {
        group
            .elements()
            .iter()
            .filter(|s| !s.is_identity())
            .all(|s| f.support.values().any(|t| t == s))
    };
    candidates.sort_by_key(|f| (!covers(f), f.support.len()));

    let mut tried = 0;
    for f in &candidates {
        tried += 1;
        let f_idele = f.to_idele(system)?;
        // quotient g / f against each witness unit
        for x in std::iter::once(None).chain(global_units.iter().map(Some)) {
            let mut quotient = g.mul(&f_idele.inv()?)?;
            if let Some(x) = x {
                let lam = diagonal_lambda(system, Level::Ext, x)?;
                quotient = quotient.mul(&lam.inv()?)?;
            }
            if congruence_unit_check(system, &quotient, m)? {
                // identity values must still be local units
                let ok = quotient.support().iter().all(|&place| {
                    let p = system.place_p(Level::Ext, place);
                    let values = quotient.component(place).expect("supported");
                    values[system.group().index_of(&group.identity())].is_unit_at(p)
                });
                if ok {
                    return Ok(ApproxOutcome::Found(f.clone()));
                }
            }
        }
    }
    Ok(ApproxOutcome::ModelIncomplete {
        candidates_tried: tried,
    })
}

/// Weak multiplicativity: witnesses with disjoint ramification combine
/// componentwise into a witness for the product homomorphism, which is
/// re-verified before being returned.
pub fn weak_mult_witness(
    system: &PlaceSystem,
    lattice: &AghLattice,
    w1: &RealizabilityWitness,
    w2: &RealizabilityWitness,
) -> Result<RealizabilityWitness> {
    let d1 = ramified_set(&w1.local_family);
    let d2 = ramified_set(&w2.local_family);
    if d1.iter().any(|v| d2.contains(v)) {
        return Err(Error::Precondition(
            "ramification loci are not disjoint".into(),
        ));
    }
    let model = w1.model.clone();
    let h = w1.h_global.mul(&w2.h_global)?;
    // product resolvend gives a normal basis generator for the product
    let r = resolvend(&w1.b).mul(&resolvend(&w2.b));
    let b = map_of_resolvend(&model, &r);
    let c = w1.c.mul(&w2.c)?;
    let u = w1.u.mul(&w2.u)?;
    let f = w1.f.mul(&w2.f)?;
    let mut local_family = BTreeMap::new();
    let all_places: std::collections::BTreeSet<usize> = w1
        .local_family
        .keys()
        .chain(w2.local_family.keys())
        .copied()
        .collect();
    for v in all_places {
        let q = system.place_q(Level::Ext, v);
        let t = LocalTameHom::trivial(q, system.group());
        let h1 = w1.local_family.get(&v).cloned().unwrap_or_else(|| t.clone());
        let h2 = w2.local_family.get(&v).cloned().unwrap_or(t);
        local_family.insert(v, h1.mul(&h2)?);
    }
    let witness = RealizabilityWitness {
        model,
        h_global: h,
        b,
        c,
        u,
        f,
        local_family,
    };
    let (ok, checks) = char1_verify(system, lattice, &witness)?;
    if !ok {
        let failing: Vec<String> = checks
            .iter()
            .filter(|c| !(c.equation_holds && c.f_matches_sigma_value && c.f_trivial_iff_unramified))
            .map(|c| c.label.clone())
            .collect();
        return Err(Error::Precondition(format!(
            "product witness fails verification at {}",
            failing.join(", ")
        )));
    }
    Ok(witness)
}
