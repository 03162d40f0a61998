//! Randomized invariants: exact field behavior of the cyclotomic
//! arithmetic and restricted-support closure of the idele containers.

use galmod::abelian::FinAbGroup;
use galmod::cohomology::FiniteTameModel;
use galmod::cyclo::{galois_apply_unit, CycloElem};
use galmod::ideles::{FiberSpec, IdeleKind, IdeleVector, Level, LocalMultValue, PlaceSystem};
use galmod::stickelberger::MultValue;
use num::bigint::BigInt;
use num::rational::BigRational;
use proptest::prelude::*;

fn conductors() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![3u64, 4, 5, 8, 9, 12])
}

fn elem_for(n: u64) -> impl Strategy<Value = CycloElem> {
    let deg = galmod::cyclo::field(n).degree();
    prop::collection::vec((-6i64..=6, 1i64..=3), deg).prop_map(move |pairs| {
        let coeffs: Vec<BigRational> = pairs
            .into_iter()
            .map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
            .collect();
        CycloElem::from_coeffs(n, coeffs)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cyclo_is_an_exact_field((n, seeds) in conductors().prop_flat_map(|n| {
        (Just(n), prop::collection::vec(elem_for(n), 3))
    })) {
        let (x, y, z) = (&seeds[0], &seeds[1], &seeds[2]);
        prop_assert_eq!(x.mul(y).mul(z), x.mul(&y.mul(z)));
        prop_assert_eq!(x.add(y).mul(z), x.mul(z).add(&y.mul(z)));
        if !x.is_zero() {
            prop_assert!(x.mul(&x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn galois_is_a_ring_homomorphism((n, seeds) in conductors().prop_flat_map(|n| {
        (Just(n), prop::collection::vec(elem_for(n), 2))
    })) {
        let (x, y) = (&seeds[0], &seeds[1]);
        let units: Vec<u64> = (1..n).filter(|&u| galmod::abelian::mod_inv(u, n).is_some()).collect();
        for &u in &units {
            prop_assert_eq!(galois_apply_unit(u, &x.add(y)), galois_apply_unit(u, x).add(&galois_apply_unit(u, y)));
            prop_assert_eq!(galois_apply_unit(u, &x.mul(y)), galois_apply_unit(u, x).mul(&galois_apply_unit(u, y)));
        }
    }

    #[test]
    fn integral_elements_multiply_closed((n, pairs) in conductors().prop_flat_map(|n| {
        let deg = galmod::cyclo::field(n).degree();
        (Just(n), prop::collection::vec(prop::collection::vec(-9i64..=9, deg), 2))
    })) {
        let mk = |v: &Vec<i64>| {
            CycloElem::from_coeffs(n, v.iter().map(|&c| BigRational::from_integer(c.into())).collect())
        };
        let x = mk(&pairs[0]);
        let y = mk(&pairs[1]);
        prop_assert!(x.is_integral() && y.is_integral());
        prop_assert!(x.mul(&y).is_integral());
    }
}

#[test]
fn restricted_support_closure_500_pairs() {
    use rand::{Rng, SeedableRng};
    let tower = FiniteTameModel::cyclotomic(20, &[3], &[9]).unwrap();
    let g = FinAbGroup::cyclic(2);
    let specs = vec![
        FiberSpec {
            label: "w0".into(),
            q: 29,
            ramified: false,
            residue_degree: 1,
            gammas: vec![0, 1],
            decomposition: vec![0],
        },
        FiberSpec {
            label: "w1".into(),
            q: 3,
            ramified: false,
            residue_degree: 2,
            gammas: vec![0],
            decomposition: vec![0, 1],
        },
        FiberSpec {
            label: "w2".into(),
            q: 7,
            ramified: true,
            residue_degree: 1,
            gammas: vec![0],
            decomposition: vec![0, 1],
        },
    ];
    let system = PlaceSystem::new(tower, g.clone(), &specs).unwrap();
    let n = system.conductor();
    let width = g.order() as usize;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(500);
    let mut sample = |rng: &mut rand_chacha::ChaCha8Rng| {
        let mut v = IdeleVector::ones(IdeleKind::Lambda, Level::Ext, width);
        for place in 0..system.ext_places().len() {
            if rng.gen_bool(0.5) {
                continue;
            }
            let values: Vec<LocalMultValue> = (0..width)
                .map(|_| {
                    let j: i64 = rng.gen_range(0..n as i64);
                    let c: i64 = rng.gen_range(2..7);
                    LocalMultValue::from_unit(
                        CycloElem::zeta_pow(n, j).add(&CycloElem::from_integer(n, c)),
                    )
                })
                .collect();
            v.set_component(place, values);
        }
        v
    };
    for _ in 0..500 {
        let a = sample(&mut rng);
        let b = sample(&mut rng);
        let ab = a.mul(&b).unwrap();
        assert!(ab.places_valid(&system));
        for p in ab.support() {
            assert!(a.support().contains(&p) || b.support().contains(&p));
        }
        let inv = a.inv().unwrap();
        assert_eq!(inv.support(), a.support());
        assert!(a.mul(&inv).unwrap().support().is_empty());
    }
}
