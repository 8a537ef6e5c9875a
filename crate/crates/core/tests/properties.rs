use proptest::prelude::*;

use fockcat::algebraic::endo_exp;
use fockcat::fock::{fock_map, FockSpace};
use fockcat::morphism::{add, compose, duality_pair, tensor};
use fockcat::symtensor::{sym_object, sym_power, symmetrizer, tensor_power};
use fockcat::{Cplx, Morphism, SpaceObject};

fn entries(len: usize) -> impl Strategy<Value = Vec<Cplx>> {
    prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), len)
        .prop_map(|v| v.into_iter().map(|(re, im)| Cplx::new(re, im)).collect())
}

fn matrix(dom: usize, cod: usize) -> impl Strategy<Value = Morphism> {
    entries(dom * cod).prop_map(move |data| {
        Morphism::from_entries(SpaceObject::base(dom), SpaceObject::base(cod), data).unwrap()
    })
}

fn scalar() -> impl Strategy<Value = Morphism> {
    entries(1).prop_map(|v| Morphism::scalar(v[0]))
}

/// `exp(M)` by scaling and squaring with a short Taylor core.
fn expm_oracle(m: &Morphism) -> Morphism {
    let norm: f64 = m.entries().iter().map(|z| z.norm()).sum();
    let s = norm.max(1.0).log2().ceil() as i32 + 4;
    let scaled = m.scale_real(0.5f64.powi(s));
    let id = Morphism::identity(m.dom());
    let mut term = id.clone();
    let mut total = id;
    for k in 1..=12 {
        term = compose(&scaled, &term).unwrap().scale_real(1.0 / k as f64);
        total = add(&total, &term).unwrap();
    }
    for _ in 0..s {
        total = compose(&total, &total).unwrap();
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_bilinear(
        f in matrix(2, 3), f2 in matrix(2, 3), g in matrix(3, 2), g2 in matrix(3, 2),
    ) {
        let left = compose(&g, &add(&f, &f2).unwrap()).unwrap();
        let right = add(&compose(&g, &f).unwrap(), &compose(&g, &f2).unwrap()).unwrap();
        prop_assert!(left.max_abs_diff(&right) <= 1e-12);
        let left = compose(&add(&g, &g2).unwrap(), &f).unwrap();
        let right = add(&compose(&g, &f).unwrap(), &compose(&g2, &f).unwrap()).unwrap();
        prop_assert!(left.max_abs_diff(&right) <= 1e-12);
    }

    #[test]
    fn interchange_law(f in matrix(2, 3), h in matrix(3, 2), g in matrix(2, 2), k in matrix(3, 2)) {
        let left = compose(&tensor(&f, &g), &tensor(&h, &k)).unwrap();
        let right = tensor(&compose(&f, &h).unwrap(), &compose(&g, &k).unwrap());
        prop_assert!(left.max_abs_diff(&right) <= 1e-12);
    }

    #[test]
    fn scalars_commute(s in scalar(), t in scalar()) {
        prop_assert_eq!(compose(&s, &t).unwrap(), compose(&t, &s).unwrap());
    }

    #[test]
    fn snake_equations(d in 1usize..=6) {
        let a = SpaceObject::base(d);
        let (zeta, theta) = duality_pair(&a);
        let id = Morphism::identity(&a);
        let snake = compose(&tensor(&id, &theta), &tensor(&zeta, &id)).unwrap();
        prop_assert!(snake.max_abs_diff(&id) <= 1e-12);
        let ids = Morphism::identity(&SpaceObject::dual(&a));
        let other = compose(&tensor(&theta, &ids), &tensor(&ids, &zeta)).unwrap();
        prop_assert!(other.max_abs_diff(&ids) <= 1e-12);
    }

    #[test]
    fn symmetrizer_is_natural(f in matrix(2, 2), n in 0usize..=3) {
        let a = SpaceObject::base(2);
        let p = symmetrizer(&a, n);
        let fn_ = tensor_power(&f, n);
        let left = compose(&fn_, &p).unwrap();
        let right = compose(&p, &fn_).unwrap();
        prop_assert!(left.max_abs_diff(&right) <= 1e-10);
    }

    #[test]
    fn symmetric_power_is_functorial(f in matrix(2, 3), g in matrix(3, 2), n in 0usize..=3) {
        let whole = sym_power(&compose(&g, &f).unwrap(), n);
        let parts = compose(&sym_power(&g, n), &sym_power(&f, n)).unwrap();
        prop_assert!(whole.max_abs_diff(&parts) <= 1e-9);
    }

    #[test]
    fn fock_functor_commutes_with_dagger(f in matrix(2, 2)) {
        let space = FockSpace::new(&SpaceObject::base(2), 3);
        let lhs = fock_map(&space, &space, &f.dagger()).unwrap();
        let rhs = fock_map(&space, &space, &f).unwrap().dagger();
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-10);
    }

    #[test]
    fn endo_exp_matches_scaling_and_squaring(raw in matrix(3, 3)) {
        // rescale into the ball of max-abs norm 2
        let m = raw.scale_real(2.0 / raw.max_abs().max(1.0) / 3.0);
        let series = endo_exp(&m, 30).unwrap();
        prop_assert!(series.max_abs_diff(&expm_oracle(&m)) <= 1e-8);
    }
}

#[test]
fn endo_exp_of_diagonal() {
    let a = SpaceObject::base(2);
    let diag = Morphism::from_entries(
        a.clone(),
        a,
        vec![
            Cplx::new(1.0, 0.0),
            Cplx::new(0.0, 0.0),
            Cplx::new(0.0, 0.0),
            Cplx::new(2.0, 0.0),
        ],
    )
    .unwrap();
    let e = endo_exp(&diag, 30).unwrap();
    let oracle = expm_oracle(&diag);
    assert!(e.max_abs_diff(&oracle) <= 1e-10);
    assert!((e.get(1, 1).re - 2f64.exp()).abs() <= 1e-10);
}

#[test]
fn symmetric_power_dimensions() {
    for d in 1..=5usize {
        for n in 0..=6usize {
            let expected = (1..=n).fold(1usize, |acc, i| acc * (d + i - 1) / i);
            let obj = sym_object(&SpaceObject::base(d), n);
            assert_eq!(obj.dim(), expected, "d={d} n={n}");
        }
    }
}
