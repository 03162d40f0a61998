//! Finite abelian groups in invariant-factor form, their elements and
//! homomorphisms, the character dual, actions of a finite group by
//! automorphisms, and cyclotomic-character twists.

use crate::finite_group::FiniteGroup;
use crate::linalg::{smith_normal_form, IntMat};
use crate::{Error, Result};
use num::bigint::BigInt;
use num::{Integer, One};

pub fn mod_pow(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

pub fn mod_inv(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m as i128, (a % m) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(m as i128) as u64)
}

/// Finite abelian group `Z/d_1 x ... x Z/d_k` with `d_i | d_{i+1}` and
/// every `d_i >= 2`; the empty list is the trivial group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinAbGroup {
    factors: Vec<u64>,
}

impl FinAbGroup {
    pub fn new(factors: &[u64]) -> Result<Self> {
        for w in factors.windows(2) {
            if w[1] % w[0] != 0 {
                return Err(Error::BadInvariantFactors(factors.to_vec()));
            }
        }
        if factors.iter().any(|&d| d < 2) {
            return Err(Error::BadInvariantFactors(factors.to_vec()));
        }
        Ok(FinAbGroup {
            factors: factors.to_vec(),
        })
    }

    pub fn trivial() -> Self {
        FinAbGroup { factors: vec![] }
    }

    pub fn cyclic(n: u64) -> Self {
        if n <= 1 {
            FinAbGroup::trivial()
        } else {
            FinAbGroup { factors: vec![n] }
        }
    }

    /// Canonicalizes an arbitrary direct product of cyclic groups to
    /// invariant-factor form via the Smith normal form of the diagonal
    /// relation matrix.
    pub fn from_orders(orders: &[u64]) -> Self {
        let live: Vec<u64> = orders.iter().copied().filter(|&o| o > 1).collect();
        if live.is_empty() {
            return FinAbGroup::trivial();
        }
        let n = live.len();
        let mut rel = IntMat::zero(n, n);
        for (i, &o) in live.iter().enumerate() {
            rel[(i, i)] = BigInt::from(o);
        }
        let snf = smith_normal_form(&rel);
        let factors: Vec<u64> = snf
            .diag
            .iter()
            .filter(|d| **d > BigInt::one())
            .map(|d| u64::try_from(d).expect("small invariant factor"))
            .collect();
        FinAbGroup { factors }
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn identity(&self) -> GroupElem {
        GroupElem {
            group: self.clone(),
            coords: vec![0; self.factors.len()],
        }
    }

    pub fn elem(&self, coords: &[i64]) -> GroupElem {
        assert_eq!(coords.len(), self.factors.len(), "wrong coordinate count");
        let reduced = coords
            .iter()
            .zip(&self.factors)
            .map(|(&c, &d)| c.rem_euclid(d as i64) as u64)
            .collect();
        GroupElem {
            group: self.clone(),
            coords: reduced,
        }
    }

    /// The i-th standard generator.
    pub fn generator(&self, i: usize) -> GroupElem {
        let mut coords = vec![0i64; self.factors.len()];
        coords[i] = 1;
        self.elem(&coords)
    }

    pub fn elements(&self) -> Vec<GroupElem> {
        let mut out = Vec::with_capacity(self.order() as usize);
        let k = self.factors.len();
        let mut coords = vec![0u64; k];
        loop {
            out.push(GroupElem {
                group: self.clone(),
                coords: coords.clone(),
            });
            let mut i = 0;
            loop {
                if i == k {
                    return out;
                }
                coords[i] += 1;
                if coords[i] < self.factors[i] {
                    break;
                }
                coords[i] = 0;
                i += 1;
            }
        }
    }

    /// Position of an element in the `elements()` enumeration.
    pub fn index_of(&self, e: &GroupElem) -> usize {
        let mut idx = 0usize;
        let mut stride = 1usize;
        for (c, d) in e.coords.iter().zip(&self.factors) {
            idx += (*c as usize) * stride;
            stride *= *d as usize;
        }
        idx
    }

    pub fn characters(&self) -> Vec<Character> {
        self.elements()
            .into_iter()
            .map(|e| Character {
                group: self.clone(),
                coords: e.coords,
            })
            .collect()
    }

    pub fn trivial_character(&self) -> Character {
        Character {
            group: self.clone(),
            coords: vec![0; self.factors.len()],
        }
    }
}

/// Element of a [`FinAbGroup`], written additively; coordinates are kept
/// reduced modulo the invariant factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElem {
    group: FinAbGroup,
    coords: Vec<u64>,
}

impl GroupElem {
    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &GroupElem) -> Result<GroupElem> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .zip(&self.group.factors)
            .map(|((&a, &b), &d)| (a + b) % d)
            .collect();
        Ok(GroupElem {
            group: self.group.clone(),
            coords,
        })
    }

    pub fn neg(&self) -> GroupElem {
        let coords = self
            .coords
            .iter()
            .zip(&self.group.factors)
            .map(|(&a, &d)| (d - a) % d)
            .collect();
        GroupElem {
            group: self.group.clone(),
            coords,
        }
    }

    pub fn sub(&self, other: &GroupElem) -> Result<GroupElem> {
        self.add(&other.neg())
    }

    /// k-fold sum, k may be negative.
    pub fn scale(&self, k: i64) -> GroupElem {
        let coords = self
            .coords
            .iter()
            .zip(&self.group.factors)
            .map(|(&a, &d)| {
                let m = d as i128;
                ((a as i128 * k as i128).rem_euclid(m)) as u64
            })
            .collect();
        GroupElem {
            group: self.group.clone(),
            coords,
        }
    }
}

/// Least `k >= 1` with `k * e = 0`.
pub fn elem_order(e: &GroupElem) -> u64 {
    let mut ord = 1u64;
    for (&c, &d) in e.coords.iter().zip(&e.group.factors) {
        let o = d / c.gcd(&d);
        ord = ord.lcm(&o);
    }
    ord
}

/// Homomorphism between finite abelian groups, stored by generator
/// images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    source: FinAbGroup,
    target: FinAbGroup,
    images: Vec<GroupElem>,
}

impl GroupHom {
    pub fn new(source: FinAbGroup, target: FinAbGroup, images: Vec<GroupElem>) -> Result<Self> {
        if images.len() != source.num_factors() {
            return Err(Error::NotMultiplicative);
        }
        for (img, &d) in images.iter().zip(source.invariant_factors()) {
            if img.group() != &target {
                return Err(Error::GroupMismatch);
            }
            if elem_order(img) != 0 && d % elem_order(img) != 0 {
                return Err(Error::NotMultiplicative);
            }
        }
        Ok(GroupHom {
            source,
            target,
            images,
        })
    }

    pub fn identity(group: &FinAbGroup) -> Self {
        let images = (0..group.num_factors()).map(|i| group.generator(i)).collect();
        GroupHom {
            source: group.clone(),
            target: group.clone(),
            images,
        }
    }

    pub fn trivial(source: &FinAbGroup, target: &FinAbGroup) -> Self {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            images: vec![target.identity(); source.num_factors()],
        }
    }

    pub fn source(&self) -> &FinAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FinAbGroup {
        &self.target
    }

    pub fn apply(&self, e: &GroupElem) -> GroupElem {
        assert_eq!(e.group(), &self.source, "element outside the source group");
        let mut acc = self.target.identity();
        for (c, img) in e.coords().iter().zip(&self.images) {
            acc = acc.add(&img.scale(*c as i64)).expect("same group");
        }
        acc
    }

    pub fn compose(&self, inner: &GroupHom) -> Result<GroupHom> {
        if inner.target != self.source {
            return Err(Error::GroupMismatch);
        }
        let images = inner.images.iter().map(|g| self.apply(g)).collect();
        GroupHom::new(inner.source.clone(), self.target.clone(), images)
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.order() != self.target.order() {
            return false;
        }
        let mut seen = std::collections::HashSet::new();
        self.source
            .elements()
            .iter()
            .all(|e| seen.insert(self.apply(e).coords().to_vec()))
    }

    /// All homomorphisms source -> target.
    pub fn enumerate(source: &FinAbGroup, target: &FinAbGroup) -> Vec<GroupHom> {
        let mut candidates: Vec<Vec<GroupElem>> = Vec::new();
        for &d in source.invariant_factors() {
            let imgs: Vec<GroupElem> = target
                .elements()
                .into_iter()
                .filter(|t| d % elem_order(t) == 0)
                .collect();
            candidates.push(imgs);
        }
        let mut out = vec![GroupHom {
            source: source.clone(),
            target: target.clone(),
            images: vec![],
        }];
        for cands in candidates {
            let mut next = Vec::with_capacity(out.len() * cands.len());
            for partial in &out {
                for c in &cands {
                    let mut images = partial.images.clone();
                    images.push(c.clone());
                    next.push(GroupHom {
                        source: source.clone(),
                        target: target.clone(),
                        images,
                    });
                }
            }
            out = next;
        }
        out
    }

    /// The automorphism group of `g` as a list of bijective self-homs.
    pub fn automorphisms(g: &FinAbGroup) -> Vec<GroupHom> {
        GroupHom::enumerate(g, g)
            .into_iter()
            .filter(|h| h.is_bijective())
            .collect()
    }
}

/// Character of a finite abelian group, stored by dual coordinates:
/// the character sends the i-th generator to `zeta_{d_i}^{coords[i]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Character {
    group: FinAbGroup,
    coords: Vec<u64>,
}

impl Character {
    pub fn new(group: &FinAbGroup, coords: &[i64]) -> Character {
        let e = group.elem(coords);
        Character {
            group: group.clone(),
            coords: e.coords,
        }
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_trivial(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn mul(&self, other: &Character) -> Result<Character> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .zip(self.group.invariant_factors())
            .map(|((&a, &b), &d)| (a + b) % d)
            .collect();
        Ok(Character {
            group: self.group.clone(),
            coords,
        })
    }

    pub fn pow(&self, k: i64) -> Character {
        let coords = self
            .coords
            .iter()
            .zip(self.group.invariant_factors())
            .map(|(&a, &d)| ((a as i128 * k as i128).rem_euclid(d as i128)) as u64)
            .collect();
        Character {
            group: self.group.clone(),
            coords,
        }
    }

    /// Exponent of `chi(s)` with respect to `zeta_m`, `m` the group
    /// exponent: `chi(s) = zeta_m^(this value)`.
    pub fn eval_exponent(&self, s: &GroupElem) -> Result<u64> {
        if &self.group != s.group() {
            return Err(Error::GroupMismatch);
        }
        let m = self.group.exponent();
        if m == 1 {
            return Ok(0);
        }
        let mut acc: u128 = 0;
        for ((&x, &c), &d) in self.coords.iter().zip(s.coords()).zip(self.group.invariant_factors()) {
            acc = (acc + (m / d) as u128 * x as u128 % m as u128 * c as u128) % m as u128;
        }
        Ok(acc as u64)
    }
}

/// Evaluates `chi(s)` as a root-of-unity exponent pair `(v, |s|)` with
/// `chi(s) = zeta_{|s|}^v` under the compatible system `zeta_d = zeta_m^(m/d)`.
pub fn char_eval(chi: &Character, s: &GroupElem) -> Result<(u64, u64)> {
    let e = chi.eval_exponent(s)?;
    let m = chi.group.exponent();
    let ord = elem_order(s);
    if m == 1 {
        return Ok((0, 1));
    }
    let step = m / ord;
    debug_assert_eq!(e % step, 0, "character value is an |s|-th root of unity");
    Ok((e / step, ord))
}

/// Action of a finite group on a [`FinAbGroup`] by automorphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaAction {
    sigma: FiniteGroup,
    group: FinAbGroup,
    maps: Vec<GroupHom>,
}

impl SigmaAction {
    pub fn new(sigma: FiniteGroup, group: FinAbGroup, maps: Vec<GroupHom>) -> Result<Self> {
        if maps.len() != sigma.order() {
            return Err(Error::Precondition("one automorphism per element".into()));
        }
        for h in &maps {
            if h.source() != &group || h.target() != &group || !h.is_bijective() {
                return Err(Error::Precondition("maps must be automorphisms of G".into()));
            }
        }
        if maps[0] != GroupHom::identity(&group) {
            return Err(Error::Precondition("identity must act trivially".into()));
        }
        for a in 0..sigma.order() {
            for b in 0..sigma.order() {
                let lhs = &maps[sigma.op(a, b)];
                let rhs = maps[a].compose(&maps[b])?;
                if lhs != &rhs {
                    return Err(Error::Precondition("action is not a homomorphism".into()));
                }
            }
        }
        Ok(SigmaAction { sigma, group, maps })
    }

    pub fn trivial(sigma: FiniteGroup, group: FinAbGroup) -> Self {
        let maps = vec![GroupHom::identity(&group); sigma.order()];
        SigmaAction { sigma, group, maps }
    }

    /// Action through a sign character: elements listed in `inverts`
    /// act by negation, the rest trivially.
    pub fn by_inversion(sigma: FiniteGroup, group: FinAbGroup, inverts: &[usize]) -> Result<Self> {
        let neg_images = (0..group.num_factors())
            .map(|i| group.generator(i).neg())
            .collect();
        let neg = GroupHom::new(group.clone(), group.clone(), neg_images)?;
        let maps = (0..sigma.order())
            .map(|i| {
                if inverts.contains(&i) {
                    neg.clone()
                } else {
                    GroupHom::identity(&group)
                }
            })
            .collect();
        SigmaAction::new(sigma, group, maps)
    }

    pub fn sigma(&self) -> &FiniteGroup {
        &self.sigma
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn apply(&self, gamma: usize, e: &GroupElem) -> GroupElem {
        self.maps[gamma].apply(e)
    }

    pub fn apply_inv(&self, gamma: usize, e: &GroupElem) -> GroupElem {
        self.maps[self.sigma.inv(gamma)].apply(e)
    }

    pub fn is_trivial(&self) -> bool {
        self.maps.iter().all(|h| h == &GroupHom::identity(&self.group))
    }

    /// All actions of `sigma` on `group`, i.e. all homomorphisms from
    /// `sigma` into the automorphism group.
    pub fn enumerate(sigma: &FiniteGroup, group: &FinAbGroup) -> Vec<SigmaAction> {
        let autos = GroupHom::automorphisms(group);
        let gens = sigma.generating_set();
        let words = sigma.words(&gens).expect("generators span");
        let mut out = Vec::new();
        let mut choice = vec![0usize; gens.len()];
        loop {
            let maps: Vec<GroupHom> = words
                .iter()
                .map(|w| {
                    let mut acc = GroupHom::identity(group);
                    for &gi in w {
                        acc = autos[choice[gi]].compose(&acc).expect("same group");
                    }
                    acc
                })
                .collect();
            if let Ok(act) = SigmaAction::new(sigma.clone(), group.clone(), maps) {
                if !out.contains(&act) {
                    out.push(act);
                }
            }
            // next choice vector
            let mut i = 0;
            loop {
                if i == choice.len() {
                    return out;
                }
                choice[i] += 1;
                if choice[i] < autos.len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }
}

pub use crate::cohomology::{fixed_homs, hom_translate};

/// Twist data for the action `omega . s := s^(kappa(omega)^n)`, where
/// `kappa` is reduction of a unit modulo the group exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloTwist {
    pub n: i64,
    pub modulus: u64,
}

impl CycloTwist {
    pub fn new(n: i64, modulus: u64) -> Self {
        CycloTwist { n, modulus }
    }

    /// kappa(omega)^n mod the group exponent, for omega given as a unit.
    pub fn exponent_of(&self, omega_unit: u64) -> Result<u64> {
        let m = self.modulus;
        if m == 1 {
            return Ok(0);
        }
        let k = omega_unit % m;
        if mod_inv(k, m).is_none() {
            return Err(Error::NotAUnit(omega_unit, m));
        }
        let base = if self.n >= 0 {
            k
        } else {
            mod_inv(k, m).expect("checked unit")
        };
        Ok(mod_pow(base, self.n.unsigned_abs(), m))
    }
}

/// `omega . s := s^(kappa(omega)^n)` on the group of `s`.
pub fn twisted_action(tw: &CycloTwist, omega_unit: u64, s: &GroupElem) -> Result<GroupElem> {
    debug_assert!(
        s.group().exponent() == 1 || tw.modulus % s.group().exponent() == 0,
        "twist modulus must be divisible by the group exponent"
    );
    let e = tw.exponent_of(omega_unit)?;
    Ok(s.scale(e as i64))
}
