//! End-to-end acceptance checks. Each test prints one line of the form
//! `criterion N [PASS|FAIL] ...` before asserting.

use fockcat::algebraic::{
    dagger_flip, dagger_flip_monoid, endo_exp, endo_monoid, monoid_embed, monoid_exp,
    ComonoidPresentation, MonoidPresentation,
};
use fockcat::fock::{
    coherent_state, comultiplication, counit_e, epsilon_single, eta_comonoid, fock_comonoid,
    fock_map, k_decompose, lowering, raising, restrict_input_degree, restrict_total_degree,
    vacuum_state, FockSpace, LadderCoefficients,
};
use fockcat::laws::{self, random, run_suite, LawId, SuiteConfig};
use fockcat::morphism::{add, compose, compose_tensor, diagonal, tensor, ONE, ZERO};
use fockcat::{Cplx, Morphism, SpaceObject};

const DIMS: [usize; 3] = [1, 2, 3];
const CUTOFFS: [usize; 3] = [2, 3, 4];

fn criterion(n: u32, ok: bool, detail: String) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    println!("criterion {n} [{verdict}] {detail}");
    assert!(ok, "criterion {n} failed: {detail}");
}

/// `<φ,ψ>` read directly off the amplitudes.
fn overlap(phi: &Morphism, psi: &Morphism) -> Cplx {
    phi.entries()
        .iter()
        .zip(psi.entries())
        .map(|(a, b)| a.conj() * b)
        .sum()
}

fn partial_exp(x: f64, cutoff: usize) -> f64 {
    let mut total = 0.0;
    let mut fact = 1.0;
    for n in 0..=cutoff {
        if n > 0 {
            fact *= n as f64;
        }
        total += x.powi(n as i32) / fact;
    }
    total
}

fn criterion_01_canonical_commutation() {
    let mut worst: f64 = 0.0;
    let mut control_seen = false;
    for d in DIMS {
        for n in CUTOFFS {
            let f = FockSpace::new(&SpaceObject::base(d), n);
            let mut rng = random::task_rng(1, &format!("ccr {d} {n}"));
            let id = Morphism::identity(f.object());
            for _ in 0..20 {
                let phi = random::unit_state(&mut rng, f.base());
                let psi = random::unit_state(&mut rng, f.base());
                let a_phi = lowering(&f, &phi).unwrap();
                let up_psi = raising(&f, &psi).unwrap();
                let comm = compose(&a_phi, &up_psi)
                    .unwrap()
                    .sub(&compose(&up_psi, &a_phi).unwrap())
                    .unwrap();
                let residual = comm.sub(&id.scale(overlap(&phi, &psi))).unwrap();
                let restricted = restrict_input_degree(&residual, n - 1).unwrap();
                worst = worst.max(restricted.max_abs());
                control_seen |= residual.max_abs() > 1e-3;
            }
        }
    }
    criterion(
        1,
        worst <= 1e-10 && control_seen,
        format!("CCR residual on sectors <= N-1: {worst:.3e}; unrestricted residual nonzero: {control_seen}"),
    );
}

fn criterion_02_comonoid_and_bialgebra() {
    let mut comonoid: f64 = 0.0;
    let mut bialgebra: f64 = 0.0;
    for d in DIMS {
        for n in CUTOFFS {
            let f = FockSpace::new(&SpaceObject::base(d), n);
            let co = fock_comonoid(&f);
            comonoid = comonoid.max(co.residuals().max());
            let mut ctx = laws::CheckContext::new(2, &format!("bialgebra {d} {n}"));
            let report = laws::check_bialgebra(&mut ctx, &co, "grid");
            bialgebra = bialgebra.max(report.max_abs_deviation);
        }
    }
    // the small case checked on every basis vector, without the library check
    let f = FockSpace::new(&SpaceObject::base(2), 2);
    let d = comultiplication(&f);
    let e = counit_e(&f);
    let dim = f.dim();
    let ff = SpaceObject::tensor(f.object(), f.object());
    let dd = d.dagger();
    let dd2 = tensor(&dd, &dd);
    let mid = {
        let obj = SpaceObject::tensor(&ff, &ff);
        Morphism::from_fn(obj.clone(), obj, |r, c| {
            let (a, b, x, y) = (
                c / dim.pow(3),
                (c / dim.pow(2)) % dim,
                (c / dim) % dim,
                c % dim,
            );
            let target = ((a * dim + x) * dim + b) * dim + y;
            if r == target {
                ONE
            } else {
                ZERO
            }
        })
    };
    let right = compose(&dd2, &compose(&mid, &tensor(&d, &d)).unwrap()).unwrap();
    let left = compose(&d, &dd).unwrap();
    let brute = restrict_input_degree(&left.sub(&right).unwrap(), 2)
        .unwrap()
        .max_abs();
    let units = compose(&e, &dd).unwrap().max_abs_diff(&tensor(&e, &e)).max(
        compose(&d, &e.dagger())
            .unwrap()
            .max_abs_diff(&tensor(&e.dagger(), &e.dagger())),
    );
    bialgebra = bialgebra.max(brute).max(units);
    criterion(
        2,
        comonoid <= 1e-10 && bialgebra <= 1e-10,
        format!(
            "comonoid residual {comonoid:.3e}; bialgebra residual on degree <= N {bialgebra:.3e}"
        ),
    );
}

fn criterion_03_additivity() {
    let mut worst: f64 = 0.0;
    for d in DIMS {
        for n in CUTOFFS {
            let fa = FockSpace::new(&SpaceObject::base(d), n);
            let fb = FockSpace::new(&SpaceObject::base(2), n);
            let da = comultiplication(&fa);
            let db = comultiplication(&fb);
            let mut rng = random::task_rng(3, &format!("additivity {d} {n}"));
            for _ in 0..20 {
                let f = random::matrix(&mut rng, fa.base(), fb.base());
                let g = random::matrix(&mut rng, fa.base(), fb.base());
                let whole = fock_map(&fa, &fb, &add(&f, &g).unwrap()).unwrap();
                let split = compose_tensor(
                    &fock_map(&fa, &fb, &f).unwrap(),
                    &fock_map(&fa, &fb, &g).unwrap(),
                    &da,
                )
                .unwrap();
                let via = compose(&db.dagger(), &split).unwrap();
                worst = worst.max(whole.max_abs_diff(&via));
            }
        }
    }
    criterion(
        3,
        worst <= 1e-10,
        format!("F(f+g) vs d†(F(f)⊗F(g))d residual {worst:.3e}"),
    );
}

fn criterion_04_orthonormality() {
    let mut worst: f64 = 0.0;
    for d in DIMS {
        for n in CUTOFFS {
            let f = FockSpace::new(&SpaceObject::base(d), n);
            let e = counit_e(&f);
            let eps = epsilon_single(&f).unwrap();
            worst = worst
                .max(
                    compose(&eps, &eps.dagger())
                        .unwrap()
                        .max_abs_diff(&Morphism::identity(f.base())),
                )
                .max((compose(&e, &e.dagger()).unwrap().as_scalar().unwrap() - ONE).norm())
                .max(compose(&e, &eps.dagger()).unwrap().max_abs());
        }
    }
    criterion(
        4,
        worst <= 1e-12,
        format!("εε† = id, ee† = 1, eε† = 0 residual {worst:.3e}"),
    );
}

fn criterion_05_product_isomorphism() {
    let mut unitarity: f64 = 0.0;
    let mut comult: f64 = 0.0;
    for da in 1..=2 {
        for db in 1..=2 {
            for n in 1..=3 {
                let a = SpaceObject::base(da);
                let b = SpaceObject::base(db);
                let k = k_decompose(&a, &b, n);
                // Gram matrix of the columns of k, summed by hand
                let cols = k.cols();
                for i in 0..cols {
                    for j in 0..cols {
                        let g: Cplx = (0..k.rows())
                            .map(|r| k.get(r, i).conj() * k.get(r, j))
                            .sum();
                        let want = if i == j { 1.0 } else { 0.0 };
                        unitarity = unitarity.max((g - want).norm());
                    }
                }
                let proj = restrict_total_degree(&Morphism::identity(k.cod()), n).unwrap();
                unitarity = unitarity.max(compose(&k, &k.dagger()).unwrap().max_abs_diff(&proj));
            }
        }
        for n in 1..=3 {
            let a = SpaceObject::base(da);
            let f = FockSpace::new(&a, n);
            let faa = FockSpace::new(&SpaceObject::biproduct(vec![a.clone(), a.clone()]), n);
            let via = compose(
                &k_decompose(&a, &a, n),
                &fock_map(&f, &faa, &diagonal(&a)).unwrap(),
            )
            .unwrap();
            comult = comult.max(via.max_abs_diff(&comultiplication(&f)));
        }
    }
    // occupation (p, q) of F(I ⊕ I) maps to the amplitude-1 product vector
    let i = SpaceObject::unit();
    let n = 4;
    let k = k_decompose(&i, &i, n);
    let fi = FockSpace::new(&i, n);
    let fii = FockSpace::new(&SpaceObject::biproduct(vec![i.clone(), i.clone()]), n);
    for total in 0..=n {
        for (local, p) in (0..=total).rev().enumerate() {
            let q = total - p;
            let col = k.column(fii.offsets()[total] + local);
            for (r, z) in col.iter().enumerate() {
                let want = if r == p * fi.dim() + q { 1.0 } else { 0.0 };
                unitarity = unitarity.max((z - want).norm());
            }
        }
    }
    criterion(
        5,
        unitarity <= 1e-10 && comult <= 1e-10,
        format!("k isometry residual {unitarity:.3e}; d = k F(Δ) residual {comult:.3e}"),
    );
}

fn criterion_06_coherent_states() {
    let mut worst: f64 = 0.0;
    for d in DIMS {
        for n in CUTOFFS {
            let f = FockSpace::new(&SpaceObject::base(d), n);
            let mut rng = random::task_rng(6, &format!("coherent {d} {n}"));
            for _ in 0..5 {
                let phi = random::state_within(&mut rng, f.base(), 1.5);
                let psi = random::unit_state(&mut rng, f.base());
                let coh = coherent_state(&f, &phi).unwrap();
                let copied =
                    restrict_total_degree(&compose(&comultiplication(&f), &coh).unwrap(), n)
                        .unwrap();
                let pair = restrict_total_degree(&tensor(&coh, &coh), n).unwrap();
                worst = worst.max(copied.max_abs_diff(&pair));
                let deleted = compose(&counit_e(&f), &coh).unwrap().as_scalar().unwrap();
                worst = worst.max((deleted - ONE).norm());
                let lowered = compose(&lowering(&f, &psi).unwrap(), &coh).unwrap();
                let eigen = coh.scale(overlap(&psi, &phi));
                let diff = restrict_total_degree(&lowered.sub(&eigen).unwrap(), n - 1).unwrap();
                worst = worst.max(diff.max_abs());
                let norm_err = (coh.norm_sqr() - partial_exp(phi.norm_sqr(), n)).abs();
                assert!(norm_err <= 1e-12, "norm partial sum off by {norm_err:e}");
            }
        }
    }
    let phi = Morphism::state(
        SpaceObject::base(2),
        vec![Cplx::new(0.6, 0.0), Cplx::new(0.0, 0.8)],
    )
    .unwrap();
    let f = FockSpace::new(&SpaceObject::base(2), 10);
    let norm = coherent_state(&f, &phi).unwrap().norm_sqr();
    let oracle = partial_exp(1.0, 10);
    let pinned = (norm - 2.7182818011).abs() <= 1e-9 && (norm - oracle).abs() <= 1e-9;
    // partial sums increase towards e^{|φ|²}
    let mut previous = 0.0;
    let mut monotone = true;
    for n in 0..=12 {
        let f = FockSpace::new(&SpaceObject::base(2), n);
        let v = coherent_state(&f, &phi).unwrap().norm_sqr();
        monotone &= v > previous && v < std::f64::consts::E;
        previous = v;
    }
    criterion(
        6,
        worst <= 1e-10 && pinned && monotone,
        format!("copy/delete/eigen residual {worst:.3e}; |Coh|² at N=10 = {norm:.10}; monotone: {monotone}"),
    );
}

fn criterion_07_exponentials() {
    let mut worst: f64 = 0.0;
    for d in DIMS {
        for n in CUTOFFS {
            let f = FockSpace::new(&SpaceObject::base(d), n);
            let flipped = dagger_flip(&fock_comonoid(&f));
            let eps_dag = epsilon_single(&f).unwrap().dagger();
            let mut rng = random::task_rng(7, &format!("exp {d} {n}"));
            for _ in 0..5 {
                let phi = random::state_within(&mut rng, f.base(), 1.0);
                let coh = coherent_state(&f, &phi).unwrap();
                let up = raising(&f, &phi).unwrap();
                let grown = compose(&endo_exp(&up, n).unwrap(), &vacuum_state(&f)).unwrap();
                worst = worst.max(grown.max_abs_diff(&coh));
                let x = compose(&eps_dag, &phi).unwrap();
                worst = worst.max(monoid_exp(&flipped, &x, n).unwrap().max_abs_diff(&coh));
                // naturality along F(g), a morphism of the flipped Fock monoids
                let g = random::matrix(&mut rng, f.base(), f.base());
                let fg = fock_map(&f, &f, &g).unwrap();
                let pushed = compose(&fg, &monoid_exp(&flipped, &x, n).unwrap()).unwrap();
                let moved = monoid_exp(&flipped, &compose(&fg, &x).unwrap(), n).unwrap();
                worst = worst.max(pushed.max_abs_diff(&moved));
            }
            let zero = Morphism::zero(&SpaceObject::unit(), f.object());
            worst = worst.max(
                monoid_exp(&flipped, &zero, n)
                    .unwrap()
                    .max_abs_diff(&vacuum_state(&f)),
            );
        }
    }
    // elementwise monoid on C²: exp(1, 0) = (e, 1) coordinatewise
    let mono = MonoidPresentation::elementwise(2);
    let phi = Morphism::basis_state(&SpaceObject::base(2), 0);
    let e = monoid_exp(&mono, &phi, 20).unwrap();
    let coordinatewise = (e.get(0, 0) - Cplx::new(std::f64::consts::E, 0.0))
        .norm()
        .max((e.get(1, 0) - ONE).norm());
    let mut additive: f64 = 0.0;
    let mut rng = random::task_rng(7, "additive");
    let monoids = [
        MonoidPresentation::elementwise(2),
        MonoidPresentation::elementwise(3),
        laws::random_commutative_monoid(&mut rng),
    ];
    for m in &monoids {
        for _ in 0..20 {
            let p = random::state_within(&mut rng, m.carrier(), 1.0);
            let q = random::state_within(&mut rng, m.carrier(), 1.0);
            let prod = compose(
                m.mult(),
                &tensor(
                    &monoid_exp(m, &p, 20).unwrap(),
                    &monoid_exp(m, &q, 20).unwrap(),
                ),
            )
            .unwrap();
            additive =
                additive.max(prod.max_abs_diff(&monoid_exp(m, &add(&p, &q).unwrap(), 20).unwrap()));
        }
        let zero = Morphism::zero(&SpaceObject::unit(), m.carrier());
        worst = worst.max(monoid_exp(m, &zero, 20).unwrap().max_abs_diff(m.unit()));
    }
    criterion(
        7,
        worst <= 1e-10 && additive <= 1e-10 && coordinatewise <= 1e-12,
        format!("exact-law residual {worst:.3e}; additive residual {additive:.3e}; elementwise exp error {coordinatewise:.3e}"),
    );
}

fn criterion_08_embedding() {
    let mut rng = random::task_rng(8, "embedding");
    let monoids = [
        MonoidPresentation::elementwise(2),
        laws::random_commutative_monoid(&mut rng),
    ];
    let mut worst: f64 = 0.0;
    for mono in &monoids {
        let m = monoid_embed(mono);
        let endo = endo_monoid(mono.carrier());
        let mult = compose(&m, mono.mult())
            .unwrap()
            .max_abs_diff(&compose(endo.mult(), &tensor(&m, &m)).unwrap());
        let unit = compose(&m, mono.unit()).unwrap().max_abs_diff(endo.unit());
        worst = worst.max(mult).max(unit);
    }
    criterion(
        8,
        worst <= 1e-12,
        format!("multiplication/unit preservation residual {worst:.3e}"),
    );
}

fn criterion_09_triangle_identities() {
    let mut counit: f64 = 0.0;
    let comonoids = [
        ComonoidPresentation::unit_comonoid(),
        ComonoidPresentation::copy(&SpaceObject::base(2)),
        dagger_flip_monoid(&MonoidPresentation::elementwise(2)),
    ];
    for co in &comonoids {
        for n in 1..=5 {
            let f = FockSpace::new(co.carrier(), n);
            let eta = eta_comonoid(co, &f).unwrap();
            let back = compose(&epsilon_single(&f).unwrap(), &eta).unwrap();
            counit = counit.max(back.max_abs_diff(&Morphism::identity(co.carrier())));
        }
    }
    let mut unit: f64 = 0.0;
    for n in 1..=3 {
        let f = FockSpace::new(&SpaceObject::base(1), n);
        let outer = FockSpace::new(f.object(), n);
        // F(F(A)) built from scratch: S_m(C^{N+1}) for m <= N
        assert_eq!(
            outer.dim(),
            (0..=n)
                .map(|m| fockcat::combinatorics::binomial(n + m, m))
                .sum::<usize>()
        );
        let eta = eta_comonoid(&fock_comonoid(&f), &outer).unwrap();
        let lifted = fock_map(&outer, &f, &epsilon_single(&f).unwrap()).unwrap();
        let round = compose(&lifted, &eta).unwrap();
        unit = unit.max(round.max_abs_diff(&Morphism::identity(f.object())));
    }
    criterion(
        9,
        counit <= 1e-10 && unit <= 1e-10,
        format!("εRη = id residual {counit:.3e}; F(ε)Rη_Q = id residual {unit:.3e}"),
    );
}

fn criterion_10_determinism_and_controls() {
    let config = SuiteConfig::default();
    let first = laws::report_json(&run_suite(&config));
    let second = laws::report_json(&run_suite(&config));
    let identical = first == second;
    let clean = run_suite(&config);
    let all_pass = laws::all_passed(&clean);
    let corrupted = run_suite(&SuiteConfig {
        coefficients: LadderCoefficients::standard().with_b(1, 1, 1.0),
        ..SuiteConfig::default()
    });
    let fails = |law: LawId| corrupted.iter().any(|r| r.law_id == law && !r.passed);
    let flipped = fails(LawId::CcrMixed) && fails(LawId::FockBialgebra);
    criterion(
        10,
        identical && all_pass && flipped,
        format!(
            "byte-identical reports: {identical}; default suite passes: {all_pass}; B(1,1)=1 fails CCR and bialgebra: {flipped}"
        ),
    );
}

fn main() {
    let criteria: [(&str, fn()); 10] = [
        (
            "criterion_01_canonical_commutation",
            criterion_01_canonical_commutation,
        ),
        (
            "criterion_02_comonoid_and_bialgebra",
            criterion_02_comonoid_and_bialgebra,
        ),
        ("criterion_03_additivity", criterion_03_additivity),
        ("criterion_04_orthonormality", criterion_04_orthonormality),
        (
            "criterion_05_product_isomorphism",
            criterion_05_product_isomorphism,
        ),
        ("criterion_06_coherent_states", criterion_06_coherent_states),
        ("criterion_07_exponentials", criterion_07_exponentials),
        ("criterion_08_embedding", criterion_08_embedding),
        (
            "criterion_09_triangle_identities",
            criterion_09_triangle_identities,
        ),
        (
            "criterion_10_determinism_and_controls",
            criterion_10_determinism_and_controls,
        ),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        if std::panic::catch_unwind(run).is_err() {
            failed.push(name);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", criteria.len());
    } else {
        println!("acceptance: failed {failed:?}");
        std::process::exit(1);
    }
}
