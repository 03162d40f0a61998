//! The named verification suites. Every check is exact; randomized
//! sweeps draw from a seeded generator recorded in the report.

use crate::report::{Check, SuiteReport};
use crate::scenario::Scenario;
use galmod::abelian::{elem_order, mod_inv, FinAbGroup, SigmaAction};
use galmod::cohomology::{
    basic_diagram_check, cocycle_of_extension, cohomologous, embedding_solution_check,
    extension_of_cocycle, h2_group, h2_order_by_enumeration, is_coboundary, is_sigma_fixed,
    restriction_exactness, transgression, Cocycle2, ModelHom,
};
use galmod::cyclo::{fixed_field_basis, CycloElem};
use galmod::ideles::{
    approx_search, build_realizability_witness, char1_verify, congruence_unit_check,
    diagonal_functional, diagonal_lambda, f_descent, factorize, hv_compatibility_check,
    local_homs, local_transpose_resolvend, mu_map, nu_map, prime_f, theta_idele, ApproxOutcome,
    IdeleKind, IdeleVector, Level, LocalMultValue, LocalTameHom, PrimeFElement,
};
use galmod::resolvend::{
    associated_hom, coset_reps, equivariant_extend, find_normal_basis_gen, is_normal_basis_gen,
    is_unramified_unit, membership_fh, rag, resolvend, spans_over_base, AlgElem,
    ReducedResolvend, UnitHom,
};
use galmod::stickelberger::{
    agh_basis, equivariance_check, integrality_criterion, lambda_is_equivariant,
    monomial_lambda_associated_hom, pairing, transpose_as_hom, CharCombo, LambdaMap, MultValue,
};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

pub fn run_suite(name: &str, sc: &Scenario, seed: u64) -> SuiteReport {
    match name {
        "basic-diagram" => basic_diagram_suite(sc),
        "cohomology" => cohomology_suite(sc),
        "ideles" => ideles_suite(sc, seed),
        "local" => local_suite(sc),
        "resolvend" => resolvend_suite(sc, seed),
        "stickelberger" => stickelberger_suite(sc, seed),
        other => {
            let mut r = SuiteReport::new(other);
            r.push(Check::of("known suite", false, "unknown suite name"));
            r
        }
    }
}

pub fn describe(name: &str) -> Option<&'static str> {
    match name {
        "stickelberger" => Some(
            "Verifies the pairing, map and kernel lattice: the pairing takes values in [0,1) \
             and vanishes on the identity; the map sends an integer character combination to \
             an integral group combination exactly when the combination lies in the kernel \
             lattice of the determinant homomorphism (both routes are computed independently \
             and compared); the kernel lattice has index |G|; and the map intertwines the \
             power twist on characters with the inverse-power twist on group elements.",
        ),
        "cohomology" => Some(
            "Computes degree-two cohomology of the acting group two ways (integer linear \
             algebra and exhaustive enumeration), checks that the crossed-product extension \
             of a cocycle and the cocycle of an extension preserve classes, that the \
             transgression class of a fixed homomorphism is independent of the lift choice, \
             that restrictions of degree-one classes are exactly the homomorphisms with \
             trivial transgression, and that the quotient extension of a surjective fixed \
             homomorphism realizes the transgression class.",
        ),
        "resolvend" => Some(
            "Exercises the resolvend map on the scenario's Galois model: the reduction of a \
             base-algebra unit has trivial associated homomorphism and every enumerated \
             homomorphism is realized by the reduced resolvend of a found normal-basis \
             generator; the unit criterion for normal-basis generators agrees with an \
             independent linear-span rank oracle; integral units with integral inverses are \
             in particular normal-basis generators.",
        ),
        "local" => Some(
            "Checks the tame local model: every homomorphism factors as the product of its \
             unramified part (Frobenius image kept) and totally ramified part (ramification \
             image kept); prime elements exist exactly when the order of the group element \
             divides q - 1; transposes of prime elements have integral exponents on the \
             whole kernel-lattice basis; and the commutation relation between the Frobenius \
             and ramification actions holds on formal radicals.",
        ),
        "ideles" => Some(
            "Runs the place-system layer: restricted-support closure of idele products, \
             transport of prime elements onto unramified fibers, the diagonal and \
             transpose/transport commuting squares, descent of fiber-constant prime \
             elements, transport identities for local homomorphism families, the \
             realizability equation with its per-place consequences and a perturbation \
             control, congruence units, the bounded approximation search (which may report \
             MODEL-INCOMPLETE), and weak multiplicativity of disjoint-support witnesses.",
        ),
        "basic-diagram" => Some(
            "For every fixed homomorphism of the scenario tower, compares the transgression \
             cocycle, embedded into the group algebra, against the defect cocycle of the \
             semilinear family on the resolvend module, value by value.",
        ),
        _ => None,
    }
}

fn tower_action(sc: &Scenario) -> SigmaAction {
    if sc.action.is_trivial() {
        SigmaAction::trivial(sc.tower.sigma().clone(), sc.group.clone())
    } else {
        sc.action.clone()
    }
}

fn fmt_combo(c: &CharCombo) -> String {
    let parts: Vec<String> = c.coeffs().iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

// ---------------------------------------------------------------------

fn stickelberger_suite(sc: &Scenario, seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new("stickelberger");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5717);
    for spec in &sc.file.stickelberger.groups {
        let g = match FinAbGroup::new(spec) {
            Ok(g) => g,
            Err(e) => {
                r.push(Check::of(
                    format!("group {spec:?} well-formed"),
                    false,
                    e.to_string(),
                ));
                continue;
            }
        };
        let lattice = agh_basis(&g);
        r.push(Check::of(
            format!("kernel lattice index for {spec:?}"),
            lattice.index() == BigInt::from(g.order()),
            format!("index = {}, |G| = {}", lattice.index(), g.order()),
        ));
        // pairing range and identity element, exhaustively
        let mut range_ok = true;
        for chi in g.characters() {
            for s in g.elements() {
                let p = pairing(&chi, &s).expect("same group");
                if p < BigRational::zero() || p >= BigRational::one() {
                    range_ok = false;
                }
                if s.is_identity() && !p.is_zero() {
                    range_ok = false;
                }
            }
        }
        r.push(Check::of(
            format!("pairing bounds for {spec:?}"),
            range_ok,
            "0 <= <chi,s> < 1 and <chi,1> = 0",
        ));
        let mut agree = 0usize;
        let mut disagree = 0usize;
        for _ in 0..sc.file.stickelberger.psi_samples {
            let coeffs: Vec<i64> = (0..g.order())
                .map(|_| rng.gen_range(-sc.file.stickelberger.coeff_bound..=sc.file.stickelberger.coeff_bound))
                .collect();
            let psi = CharCombo::from_integer_coeffs(&g, &coeffs);
            let (a, b) = integrality_criterion(&psi, &lattice).expect("integer coefficients");
            if a == b {
                agree += 1;
            } else {
                disagree += 1;
                r.push(Check::of(
                    format!("integrality routes disagree for {spec:?}"),
                    false,
                    fmt_combo(&psi),
                ));
            }
        }
        r.push(Check::of(
            format!("integrality criterion for {spec:?}"),
            disagree == 0,
            format!("{agree} samples, both routes agree"),
        ));
        let m = g.exponent();
        let units: Vec<u64> = (1..m).filter(|&u| mod_inv(u, m).is_some()).collect();
        let mut eq_count = 0usize;
        let mut eq_ok = true;
        for _ in 0..sc.file.stickelberger.psi_samples.min(20) {
            let coeffs: Vec<i64> = (0..g.order()).map(|_| rng.gen_range(-9..=9)).collect();
            let psi = CharCombo::from_integer_coeffs(&g, &coeffs);
            for &u in &units {
                eq_ok &= equivariance_check(&psi, u).expect("unit");
                eq_count += 1;
            }
        }
        r.push(Check::of(
            format!("twist equivariance for {spec:?}"),
            eq_ok,
            format!("{eq_count} (psi, u) instances"),
        ));
    }
    r
}

// ---------------------------------------------------------------------

fn cohomology_suite(sc: &Scenario) -> SuiteReport {
    let mut r = SuiteReport::new("cohomology");
    let act = &sc.action;
    match h2_group(act, 100_000) {
        Ok(h2) => {
            match h2_order_by_enumeration(act, sc.file.bounds.h2_enumeration) {
                Ok((z2, b2, order)) => {
                    r.push(Check::of(
                        "second cohomology order: both routes",
                        order == h2.order,
                        format!(
                            "linear algebra {} vs enumeration {} (|Z2| = {z2}, |B2| = {b2})",
                            h2.order, order
                        ),
                    ));
                }
                Err(e) => r.push(Check::note(
                    "second cohomology enumeration skipped",
                    e.to_string(),
                )),
            }
            let mut reps: Vec<Cocycle2> = vec![Cocycle2::zero(act)];
            reps.extend(h2.generators.iter().map(|(_, c)| c.clone()));
            for (i, c) in reps.iter().enumerate() {
                let ok = extension_of_cocycle(c)
                    .and_then(|e| cocycle_of_extension(&e, act))
                    .and_then(|back| cohomologous(c, &back));
                r.push(Check::of(
                    format!("extension/cocycle roundtrip preserves class #{i}"),
                    matches!(ok, Ok(true)),
                    format!("{:?}", ok.map(|_| "class preserved")),
                ));
            }
        }
        Err(e) => r.push(Check::of("second cohomology computed", false, e.to_string())),
    }

    // tower side
    let t_act = tower_action(sc);
    let homs = ModelHom::enumerate(&sc.tower, &sc.group);
    let fixed: Vec<ModelHom> = homs
        .iter()
        .filter(|h| is_sigma_fixed(h, &t_act, &sc.tower))
        .cloned()
        .collect();
    let lift_choices = sc.tower.all_lift_choices();
    for (i, h) in fixed.iter().enumerate() {
        let tr0 = transgression(&sc.tower, h, &t_act).expect("fixed hom");
        if lift_choices.len() <= 64 {
            let all_same = lift_choices.iter().all(|lifts| {
                let m2 = sc.tower.clone().with_lifts(lifts.clone()).expect("valid lifts");
                let tr = transgression(&m2, h, &t_act).expect("fixed hom");
                cohomologous(&tr0, &tr).expect("same action")
            });
            r.push(Check::of(
                format!("transgression class is lift-independent for hom #{i}"),
                all_same,
                format!("{} lift choices", lift_choices.len()),
            ));
        }
    }
    match restriction_exactness(&sc.tower, &sc.group, &t_act) {
        Ok(rep) => r.push(Check::of(
            "restriction image equals transgression kernel",
            rep.equal,
            format!("image {} homs, kernel {} homs", rep.image.len(), rep.kernel.len()),
        )),
        Err(e) => r.push(Check::of("restriction exactness", false, e.to_string())),
    }
    for (i, h) in fixed.iter().enumerate() {
        if !h.is_surjective() {
            continue;
        }
        match embedding_solution_check(&sc.tower, h, &t_act) {
            Ok((_, _, class_eq)) => r.push(Check::of(
                format!("embedding extension class matches transgression for hom #{i}"),
                class_eq,
                "quotient extension validated",
            )),
            Err(e) => r.push(Check::of(
                format!("embedding check for hom #{i}"),
                false,
                e.to_string(),
            )),
        }
    }
    r
}

// ---------------------------------------------------------------------

fn resolvend_suite(sc: &Scenario, seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new("resolvend");
    let model = &sc.omega_model;
    let g = &sc.group;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x4e5);
    let homs = UnitHom::enumerate(model, g);
    for (i, h) in homs.iter().enumerate() {
        match find_normal_basis_gen(h, model, sc.file.resolvend.search_bound) {
            Ok(a) => {
                let hit = ReducedResolvend::new(resolvend(&a))
                    .and_then(|rr| associated_hom(&rr, model))
                    .map(|rec| &rec == h)
                    .unwrap_or(false);
                r.push(Check::of(
                    format!("hom #{i} realized by a reduced resolvend"),
                    hit,
                    "associated homomorphism recovered",
                ));
            }
            Err(e) => r.push(Check::of(
                format!("hom #{i} realized by a reduced resolvend"),
                false,
                e.to_string(),
            )),
        }
    }
    // reduction of base units is trivial
    let base = fixed_field_basis(model.n, model.gamma());
    let mut kernel_ok = true;
    let mut kernel_count = 0;
    for c0 in 1..4i64 {
        for c1 in -2..3i64 {
            let beta = AlgElem::from_coeffs(
                model.n,
                g,
                {
                    let mut coeffs = vec![CycloElem::zero(model.n); g.order() as usize];
                    coeffs[0] = base[0].scale(&BigRational::from_integer(c0.into()));
                    coeffs[1] = base[0].scale(&BigRational::from_integer(c1.into()));
                    coeffs
                },
            );
            if !beta.is_unit() {
                continue;
            }
            let trivial = rag(model, &beta)
                .and_then(|rr| associated_hom(&rr, model))
                .map(|h| h.is_trivial())
                .unwrap_or(false);
            kernel_ok &= trivial;
            kernel_count += 1;
        }
    }
    r.push(Check::of(
        "reduced base units have trivial homomorphism",
        kernel_ok,
        format!("{kernel_count} base units"),
    ));
    // unit criterion vs span oracle
    let mut agree = 0usize;
    let mut tried = 0usize;
    let mut implication_ok = true;
    while agree < sc.file.resolvend.samples && tried < 20 * sc.file.resolvend.samples {
        tried += 1;
        let h = &homs[rng.gen_range(0..homs.len())];
        let reps = coset_reps(h);
        let basis = fixed_field_basis(model.n, &h.kernel());
        let rep_values: Vec<CycloElem> = (0..reps.len())
            .map(|_| {
                let mut v = CycloElem::zero(model.n);
                for b in &basis {
                    let c: i64 = rng.gen_range(-2..=2);
                    if c != 0 {
                        v = v.add(&b.scale(&BigRational::from_integer(c.into())));
                    }
                }
                v
            })
            .collect();
        let a = match equivariant_extend(model, h, &reps, &rep_values) {
            Ok(a) => a,
            Err(_) => continue,
        };
        if !membership_fh(&a, h) {
            continue;
        }
        let by_unit = is_normal_basis_gen(&a, h).expect("membership holds");
        let by_rank = spans_over_base(&a);
        if by_unit != by_rank {
            r.push(Check::of("unit criterion equals span oracle", false, "disagreement"));
            return r;
        }
        if is_unramified_unit(&a, h).unwrap_or(false) && !by_unit {
            implication_ok = false;
        }
        agree += 1;
    }
    r.push(Check::of(
        "unit criterion equals span oracle",
        agree >= sc.file.resolvend.samples,
        format!("{agree} sampled members"),
    ));
    r.push(Check::of(
        "integral units are normal basis generators",
        implication_ok,
        "implication held on all samples",
    ));
    r
}

// ---------------------------------------------------------------------

fn local_suite(sc: &Scenario) -> SuiteReport {
    let mut r = SuiteReport::new("local");
    let g = &sc.group;
    let n = sc.file.cyclo.conductor;
    for &q in &sc.file.local.residue_sizes {
        if galmod::ideles::LocalTameGroup::new(q).is_err() {
            r.push(Check::of(
                format!("q = {q} is a prime power"),
                false,
                "invalid residue size",
            ));
            continue;
        }
        let homs = local_homs(q, g);
        let ok = homs.iter().all(|h| {
            let (nr, tot) = factorize(h);
            nr.is_unramified() && tot.frob.is_identity() && nr.mul(&tot).unwrap() == *h
        });
        r.push(Check::of(
            format!("factorization recovers every hom at q = {q}"),
            ok,
            format!("{} homs", homs.len()),
        ));
    }
    // precondition enforcement: an inadmissible order must be rejected
    let mut neg_seen = false;
    for &q in &sc.file.local.residue_sizes {
        for s in g.elements() {
            if !s.is_identity() && (q - 1) % elem_order(&s) != 0 {
                neg_seen = true;
                let rejected = prime_f(&s, q, 0, n).is_err();
                r.push(Check::of(
                    format!("prime element precondition at q = {q}"),
                    rejected,
                    format!("order {} does not divide {}", elem_order(&s), q - 1),
                ));
                break;
            }
        }
        if neg_seen {
            break;
        }
    }
    if !neg_seen {
        r.push(Check::note(
            "prime element precondition",
            "every element is admissible at the configured residue sizes",
        ));
    }
    // transposes of prime elements have integral exponents
    let lattice = agh_basis(g);
    let m = g.exponent().max(1);
    let q = (1..500u64)
        .map(|k| k * m + 1)
        .find(|&q| galmod::ideles::LocalTameGroup::new(q).is_ok())
        .expect("a prime power 1 mod exp(G) exists");
    let mut integral = true;
    for s in g.elements() {
        let f = prime_f(&s, q, 0, n).expect("admissible");
        let hom = local_transpose_resolvend(&f, &lattice).expect("integral exponents");
        integral &= hom
            .basis_values()
            .iter()
            .all(|v| v.pi_exp().denom().is_one());
    }
    r.push(Check::of(
        "transpose exponents integral on the whole basis",
        integral,
        format!("residue size {q}"),
    ));
    // presentation relation on radicals
    let mut relation = true;
    for &qq in &sc.file.local.residue_sizes {
        if mod_inv(qq % n, n).is_none() {
            continue;
        }
        for d in 2..=n.min(12) {
            if n % d != 0 {
                continue;
            }
            let v = LocalMultValue::new(
                CycloElem::one(n),
                BigRational::new(BigInt::one(), BigInt::from(d)),
                Some(0),
            );
            let q_inv = mod_inv(qq % n, n).unwrap();
            let lhs = v
                .apply_sigma_inverse()
                .unwrap()
                .apply_frobenius(q_inv)
                .apply_sigma()
                .unwrap()
                .apply_frobenius(qq);
            let mut rhs = v.clone();
            for _ in 0..(qq - 1) % d {
                rhs = rhs.apply_sigma().unwrap();
            }
            relation &= lhs == rhs;
        }
    }
    r.push(Check::of(
        "commutation relation holds on formal radicals",
        relation,
        "frobenius conjugate of the ramification action",
    ));
    r
}

// ---------------------------------------------------------------------

fn ideles_suite(sc: &Scenario, seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new("ideles");
    let system = &sc.system;
    let g = &sc.group;
    let n = system.conductor();
    let lattice = agh_basis(g);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1de1e);
    let width = g.order() as usize;
    let flag = sc.file.flags.roots_of_unity_in_k;

    // restricted-support closure
    let mut closure_ok = true;
    for _ in 0..sc.file.ideles.sweep {
        let sample = |rng: &mut ChaCha8Rng| {
            let mut v = IdeleVector::ones(IdeleKind::Lambda, Level::Ext, width);
            for place in 0..system.ext_places().len() {
                if rng.gen_bool(0.5) {
                    continue;
                }
                let values: Vec<LocalMultValue> = (0..width)
                    .map(|_| {
                        let j: i64 = rng.gen_range(0..n as i64);
                        let c: i64 = rng.gen_range(2..6);
                        LocalMultValue::from_unit(
                            CycloElem::zeta_pow(n, j).add(&CycloElem::from_integer(n, c)),
                        )
                    })
                    .collect();
                v.set_component(place, values);
            }
            v
        };
        let a = sample(&mut rng);
        let b = sample(&mut rng);
        let ab = a.mul(&b).expect("same shape");
        closure_ok &= ab.places_valid(system)
            && ab
                .support()
                .iter()
                .all(|p| a.support().contains(p) || b.support().contains(p));
        closure_ok &= a.mul(&a.inv().unwrap()).unwrap().support().is_empty();
    }
    r.push(Check::of(
        "restricted support closed under product and inverse",
        closure_ok,
        format!("{} random pairs", sc.file.ideles.sweep),
    ));

    if flag {
        // prime transport onto unramified fibers
        let mut transported = 0;
        let mut transport_ok = true;
        for s in g.elements() {
            if s.is_identity() {
                continue;
            }
            for (wi, w) in system.base_places().iter().enumerate() {
                if w.ramified || (w.q - 1) % elem_order(&s) != 0 {
                    continue;
                }
                let mut support = BTreeMap::new();
                support.insert(wi, s.clone());
                let f = PrimeFElement::new(Level::Base, support);
                let moved = nu_map(system, &f.to_idele(system).unwrap(), true).unwrap();
                for &v in &w.fiber {
                    let vp = &system.ext_places()[v];
                    let expected = prime_f(&s, vp.q, vp.unif, n).unwrap();
                    transport_ok &= moved.component(v) == Some(&expected.values().to_vec());
                    transported += 1;
                }
            }
        }
        r.push(Check::of(
            "prime elements transport onto unramified fibers",
            transport_ok,
            format!("{transported} place instances"),
        ));

        // diagonal square for the Lambda transport
        let tilde_units: Vec<u64> = {
            let real = system.tower().realization().unwrap();
            (0..system.tower().total().order())
                .map(|i| real.units[i])
                .collect()
        };
        let base_field = fixed_field_basis(n, &tilde_units);
        let mut square_ok = true;
        let mut squares = 0;
        for _ in 0..sc.file.ideles.sweep {
            let values: Vec<CycloElem> = (0..width)
                .map(|_| {
                    let mut acc = CycloElem::zero(n);
                    for b in &base_field {
                        let c: i64 = rng.gen_range(-2..=2);
                        acc = acc.add(&b.scale(&BigRational::from_integer(c.into())));
                    }
                    acc
                })
                .collect();
            if values.iter().any(|v| v.is_zero()) {
                continue;
            }
            let f = LambdaMap::new(g, values);
            let lhs = nu_map(system, &diagonal_lambda(system, Level::Base, &f).unwrap(), true)
                .unwrap();
            let rhs = diagonal_lambda(system, Level::Ext, &f).unwrap();
            square_ok &= lhs == rhs;
            squares += 1;
        }
        r.push(Check::of(
            "transport of base diagonals equals extension diagonals",
            square_ok,
            format!("{squares} global maps"),
        ));

        // transpose/transport square
        let mut theta_ok = true;
        for _ in 0..sc.file.ideles.sweep {
            let mut gq = IdeleVector::ones(IdeleKind::Lambda, Level::Base, width);
            for (wi, w) in system.base_places().iter().enumerate() {
                if rng.gen_bool(0.4) {
                    continue;
                }
                let values: Vec<LocalMultValue> = (0..width)
                    .map(|_| {
                        let j: i64 = rng.gen_range(0..n as i64);
                        let c: i64 = rng.gen_range(2..6);
                        let unit = CycloElem::zeta_pow(n, j).add(&CycloElem::from_integer(n, c));
                        if w.ramified {
                            LocalMultValue::from_unit(unit)
                        } else {
                            let e: i64 = rng.gen_range(-2..3);
                            LocalMultValue::new(unit, BigRational::from_integer(e.into()), Some(w.unif))
                        }
                    })
                    .collect();
                gq.set_component(wi, values);
            }
            let lhs = theta_idele(system, &lattice, &nu_map(system, &gq, true).unwrap()).unwrap();
            let rhs = mu_map(system, &theta_idele(system, &lattice, &gq).unwrap()).unwrap();
            theta_ok &= lhs == rhs;
        }
        r.push(Check::of(
            "transpose commutes with transport",
            theta_ok,
            format!("{} random base ideles", sc.file.ideles.sweep),
        ));

        // monomial global units land in trivially-transgressing classes
        let m = g.exponent();
        if m > 1 && n % (2 * m) == 0 {
            let t_act = tower_action(sc);
            let fixed_exps: Vec<u64> = (0..n)
                .filter(|&j| j % m == 0)
                .filter(|&j| tilde_units.iter().all(|&u| (u * j) % n == j % n))
                .collect();
            let mut count = 0;
            let mut class_ok = true;
            for &j in &fixed_exps {
                for slot in 1..width {
                    let mut values = vec![CycloElem::one(n); width];
                    values[slot] = CycloElem::zeta_pow(n, j as i64);
                    let gmap = LambdaMap::new(g, values);
                    if !lambda_is_equivariant(&gmap, sc.omega_model.gamma()) {
                        continue;
                    }
                    let lam = diagonal_lambda(system, Level::Base, &gmap).unwrap();
                    let left =
                        theta_idele(system, &lattice, &nu_map(system, &lam, true).unwrap())
                            .unwrap();
                    let global = transpose_as_hom(&gmap, &lattice).unwrap();
                    class_ok &= left == diagonal_functional(system, Level::Ext, &global);
                    let hom = monomial_lambda_associated_hom(&gmap, &sc.omega_model).unwrap();
                    let real = system.tower().realization().unwrap();
                    let values: Vec<_> = system
                        .tower()
                        .omega()
                        .iter()
                        .map(|&i| hom.apply(real.units[i]))
                        .collect();
                    let mh = ModelHom::new(system.tower(), values).unwrap();
                    let tr = transgression(system.tower(), &mh, &t_act).unwrap();
                    class_ok &= is_coboundary(&tr).unwrap().is_some();
                    count += 1;
                }
            }
            r.push(Check::of(
                "transported transposes of global units have trivial transgression",
                class_ok,
                format!("{count} monomial units"),
            ));
        }

        // descent roundtrip
        let mut descent_ok = true;
        let mut descended = 0;
        for s in g.elements() {
            if s.is_identity() {
                continue;
            }
            let mut support = BTreeMap::new();
            for (_, w) in system.base_places().iter().enumerate() {
                if w.ramified || (w.q - 1) % elem_order(&s) != 0 {
                    continue;
                }
                for &v in &w.fiber {
                    support.insert(v, s.clone());
                }
            }
            if support.is_empty() {
                continue;
            }
            let f = PrimeFElement::new(Level::Ext, support);
            match f_descent(system, &f) {
                Some(gd) => {
                    let back = nu_map(system, &gd.to_idele(system).unwrap(), true).unwrap();
                    descent_ok &= back == f.to_idele(system).unwrap();
                    descended += 1;
                }
                None => descent_ok = false,
            }
        }
        r.push(Check::of(
            "fiber-constant prime elements descend and return",
            descent_ok,
            format!("{descended} elements"),
        ));
    } else {
        r.push(Check::note(
            "transport identities skipped",
            "roots_of_unity_in_k flag not set",
        ));
    }

    // realizability scenario
    let homs = UnitHom::enumerate(&sc.omega_model, g);
    let h_global = homs
        .iter()
        .find(|h| !h.is_trivial())
        .cloned()
        .unwrap_or_else(|| UnitHom::trivial(&sc.omega_model, g));
    if let Some(ram) = sc.file.ideles.ramified_place {
        let mut family = BTreeMap::new();
        for (vi, v) in system.ext_places().iter().enumerate() {
            if v.ramified {
                continue;
            }
            family.insert(
                vi,
                LocalTameHom::new(v.q, h_global.apply(v.q % n), g.identity()).unwrap(),
            );
        }
        let qram = system.ext_places()[ram].q;
        let s_ram = g
            .elements()
            .into_iter()
            .find(|s| !s.is_identity() && (qram - 1) % elem_order(s) == 0);
        match s_ram {
            None => r.push(Check::note(
                "realizability scenario skipped",
                "no admissible ramification image at the chosen place",
            )),
            Some(s) => {
                family.insert(ram, LocalTameHom::new(qram, g.identity(), s).unwrap());
                let t_act = tower_action(sc);
                let (ok_fam, _) = hv_compatibility_check(system, &family, &t_act);
                r.push(Check::of(
                    "local family is transport-consistent",
                    ok_fam,
                    "frobenius and ramification images constant on fibers",
                ));
                match build_realizability_witness(
                    system,
                    &lattice,
                    &sc.omega_model,
                    &h_global,
                    &family,
                    &BTreeMap::new(),
                    sc.file.resolvend.search_bound,
                ) {
                    Err(e) => r.push(Check::of("realizability witness built", false, e.to_string())),
                    Ok(w) => {
                        match char1_verify(system, &lattice, &w) {
                            Err(e) => {
                                r.push(Check::of("realizability equation", false, e.to_string()))
                            }
                            Ok((ok, checks)) => {
                                for c in &checks {
                                    r.push(Check::of(
                                        format!("realizability at place {}", c.label),
                                        c.equation_holds
                                            && c.f_matches_sigma_value
                                            && c.f_trivial_iff_unramified,
                                        c.detail.clone(),
                                    ));
                                }
                                r.push(Check::of(
                                    "realizability equation verified",
                                    ok,
                                    format!("{} places", checks.len()),
                                ));
                            }
                        }
                        // perturbation control
                        let mut bad = w.clone();
                        let mut uv = bad.u.component_or_ones(0, n);
                        uv[0] = uv[0]
                            .mul(&LocalMultValue::from_unit(CycloElem::zeta_pow(n, 1)));
                        bad.u.set_component(0, uv);
                        let control = char1_verify(system, &lattice, &bad)
                            .map(|(ok, checks)| {
                                let failing: Vec<usize> = checks
                                    .iter()
                                    .filter(|c| !c.equation_holds)
                                    .map(|c| c.place)
                                    .collect();
                                !ok && failing == vec![0]
                            })
                            .unwrap_or(false);
                        r.push(Check::of(
                            "perturbed unit idele fails at exactly the perturbed place",
                            control,
                            "negative control",
                        ));
                        // weak multiplicativity with a second witness
                        if let Some(ram2) = sc.file.ideles.second_ramified_place {
                            let qram2 = system.ext_places()[ram2].q;
                            let s2 = g
                                .elements()
                                .into_iter()
                                .find(|s| !s.is_identity() && (qram2 - 1) % elem_order(s) == 0);
                            if let Some(s2) = s2 {
                                let mut family2 = BTreeMap::new();
                                for (vi, v) in system.ext_places().iter().enumerate() {
                                    if v.ramified {
                                        continue;
                                    }
                                    family2.insert(
                                        vi,
                                        LocalTameHom::new(
                                            v.q,
                                            h_global.apply(v.q % n),
                                            g.identity(),
                                        )
                                        .unwrap(),
                                    );
                                }
                                family2
                                    .insert(ram2, LocalTameHom::new(qram2, g.identity(), s2).unwrap());
                                let w2 = build_realizability_witness(
                                    system,
                                    &lattice,
                                    &sc.omega_model,
                                    &h_global,
                                    &family2,
                                    &BTreeMap::new(),
                                    sc.file.resolvend.search_bound,
                                )
                                .expect("witness");
                                let prod = galmod::ideles::weak_mult_witness(
                                    system, &lattice, &w, &w2,
                                );
                                r.push(Check::of(
                                    "disjoint-support witnesses multiply",
                                    prod.is_ok(),
                                    match &prod {
                                        Ok(p) => format!(
                                            "product ramified at {} places",
                                            p.f.support.len()
                                        ),
                                        Err(e) => e.to_string(),
                                    },
                                ));
                            }
                        }
                    }
                }
            }
        }
    } else {
        r.push(Check::note(
            "realizability scenario skipped",
            "no ramified place configured",
        ));
    }

    // congruence units and the approximation surrogate
    let m_mod = sc.file.ideles.modulus;
    let one = IdeleVector::ones(IdeleKind::Lambda, Level::Ext, width);
    r.push(Check::of(
        "identity idele is a congruence unit",
        congruence_unit_check(system, &one, m_mod).unwrap_or(false),
        format!("modulus {m_mod}"),
    ));
    let unit_map = LambdaMap::new(
        g,
        {
            let mut v = vec![CycloElem::one(n); width];
            v[width - 1] = CycloElem::from_integer(n, -1);
            v
        },
    );
    let lam = diagonal_lambda(system, Level::Ext, &unit_map).unwrap();
    match approx_search(system, &lam, &[], m_mod, &[unit_map.clone()]) {
        Ok(ApproxOutcome::Found(f)) => r.push(Check::pass(
            "approximation search finds a prime element",
            format!("support size {}", f.support.len()),
        )),
        Ok(ApproxOutcome::ModelIncomplete { candidates_tried }) => r.push(Check::note(
            "approximation search MODEL-INCOMPLETE",
            format!("{candidates_tried} candidates exhausted; not a refutation"),
        )),
        Err(e) => r.push(Check::of("approximation search", false, e.to_string())),
    }
    r
}

// ---------------------------------------------------------------------

fn basic_diagram_suite(sc: &Scenario) -> SuiteReport {
    let mut r = SuiteReport::new("basic-diagram");
    let t_act = tower_action(sc);
    let homs = ModelHom::enumerate(&sc.tower, &sc.group);
    let mut count = 0;
    for (i, h) in homs.iter().enumerate() {
        if !is_sigma_fixed(h, &t_act, &sc.tower) {
            continue;
        }
        match basic_diagram_check(&sc.tower, h, &t_act) {
            Ok(ok) => {
                r.push(Check::of(
                    format!("transgression equals grading defect for hom #{i}"),
                    ok,
                    if h.is_trivial() {
                        "trivial homomorphism".to_string()
                    } else {
                        "valuewise equality in the group algebra".to_string()
                    },
                ));
                count += 1;
            }
            Err(e) => r.push(Check::of(
                format!("basic diagram for hom #{i}"),
                false,
                e.to_string(),
            )),
        }
    }
    if count == 0 {
        r.push(Check::of("at least one fixed homomorphism", false, "none found"));
    }
    r
}
