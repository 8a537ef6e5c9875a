use rand::Rng;

use super::random::{gaussian, matrix, probe_states, state_within, unit_state};
use super::{CheckContext, LawId, LawReport};
use crate::algebraic::{
    dagger_flip, dagger_flip_monoid, endo_exp, endo_monoid, monoid_embed, monoid_exp,
    ComonoidPresentation, MonoidPresentation,
};
use crate::combinatorics::multiset_count;
use crate::error::{Error, Result};
use crate::fock::{
    coherent_state, comultiplication, counit_e, degree_map, epsilon_single, eta_comonoid,
    fock_comonoid, fock_map, k_decompose_with, lowering, raising, restrict_input_degree,
    restrict_total_degree, vacuum_state, FockSpace,
};
use crate::morphism::{
    add, codiagonal, compose, compose_tensor, diagonal, direct_sum, duality_pair, injection,
    projection, swap, tensor, Cplx, Morphism, ONE, ZERO,
};
use crate::space::SpaceObject;
use crate::symtensor::{
    permutation_unitary, sym_isometry_dag, sym_power, sym_projection, symmetrizer, tensor_power,
};

fn grid(d: usize, n: usize) -> String {
    format!("d={d} N={n}")
}

fn eval(f: impl FnOnce() -> Result<f64>) -> Result<f64> {
    f()
}

/// Running maximum that keeps NaN sticky.
#[derive(Default)]
struct Worst(f64);

impl Worst {
    fn see(&mut self, x: f64) {
        if x.is_nan() || self.0.is_nan() {
            self.0 = f64::NAN;
        } else {
            self.0 = self.0.max(x);
        }
    }

    fn diff(&mut self, a: &Morphism, b: &Morphism) {
        self.see(a.max_abs_diff(b));
    }
}

fn inner(phi: &Morphism, psi: &Morphism) -> Result<Cplx> {
    Ok(compose(&phi.dagger(), psi)?
        .as_scalar()
        .expect("states compose to a scalar"))
}

fn fock(ctx: &CheckContext, d: usize, n: usize) -> FockSpace {
    FockSpace::with_coefficients(&SpaceObject::base(d), n, ctx.coefficients.clone())
}

fn restrict_input_below(m: &Morphism, bound: Option<usize>) -> Result<Morphism> {
    match bound {
        Some(k) => restrict_input_degree(m, k),
        None => Ok(m.mask_cols(&vec![false; m.cols()])),
    }
}

fn restrict_output_below(m: &Morphism, bound: Option<usize>) -> Result<Morphism> {
    match bound {
        Some(k) => restrict_total_degree(m, k),
        None => Ok(m.mask_rows(&vec![false; m.rows()])),
    }
}

fn all_perms(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            prefix.push(x);
            go(prefix, rest, out);
            prefix.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut (0..n).collect(), &mut out);
    out
}

/// Dagger-symmetric-monoidal structure, biproducts and duals on `C^d`.
pub fn check_linalg(ctx: &mut CheckContext, d: usize) -> Vec<LawReport> {
    let a = SpaceObject::base(d);
    let b = SpaceObject::base(d + 1);
    let c = SpaceObject::base(2);
    let inst = format!("d={d}");
    let samples = ctx.samples;
    let rng = &mut ctx.rng;

    let bilinearity = eval(|| {
        let mut w = Worst::default();
        for _ in 0..samples {
            let f = matrix(rng, &a, &b);
            let f2 = matrix(rng, &a, &b);
            let g = matrix(rng, &b, &c);
            let g2 = matrix(rng, &b, &c);
            let s = Morphism::scalar(gaussian(rng));
            let t = Morphism::scalar(gaussian(rng));
            w.diff(
                &compose(&g, &add(&f, &f2)?)?,
                &add(&compose(&g, &f)?, &compose(&g, &f2)?)?,
            );
            w.diff(
                &compose(&add(&g, &g2)?, &f)?,
                &add(&compose(&g, &f)?, &compose(&g2, &f)?)?,
            );
            let st = compose(&s, &t)?.as_scalar().expect("scalar");
            let (sv, tv) = (
                s.as_scalar().expect("scalar"),
                t.as_scalar().expect("scalar"),
            );
            w.diff(&f.scale(st), &f.scale(tv).scale(sv));
            w.diff(&add(&f, &Morphism::zero(&a, &b))?, &f);
        }
        Ok(w.0)
    });

    let interchange = eval(|| {
        let mut w = Worst::default();
        for _ in 0..samples {
            let h = matrix(rng, &a, &b);
            let f = matrix(rng, &b, &c);
            let k = matrix(rng, &c, &a);
            let g = matrix(rng, &a, &b);
            let left = compose(&tensor(&f, &g), &tensor(&h, &k))?;
            let right = tensor(&compose(&f, &h)?, &compose(&g, &k)?);
            w.diff(&left, &right);
            w.diff(&compose_tensor(&f, &g, &tensor(&h, &k))?, &right);
        }
        Ok(w.0)
    });

    let scalars = eval(|| {
        let mut w = Worst::default();
        for _ in 0..samples {
            let s = Morphism::scalar(gaussian(rng));
            let t = Morphism::scalar(gaussian(rng));
            w.diff(&compose(&s, &t)?, &compose(&t, &s)?);
        }
        Ok(w.0)
    });

    let biproduct = eval(|| {
        let mut w = Worst::default();
        let parts = vec![a.clone(), b.clone(), SpaceObject::unit()];
        let whole = SpaceObject::biproduct(parts.clone());
        let mut total = Morphism::zero(&whole, &whole);
        for n in 0..parts.len() {
            let i_n = injection(&parts, n)?;
            let p_n = projection(&parts, n)?;
            w.diff(&p_n, &i_n.dagger());
            for m in 0..parts.len() {
                let pm_in = compose(&projection(&parts, m)?, &i_n)?;
                if m == n {
                    w.diff(&pm_in, &Morphism::identity(&parts[n]));
                } else {
                    w.see(pm_in.max_abs());
                }
            }
            total = add(&total, &compose(&i_n, &p_n)?)?;
        }
        w.diff(&total, &Morphism::identity(&whole));
        for _ in 0..samples {
            let f = matrix(rng, &a, &b);
            let g = matrix(rng, &a, &b);
            let via = compose(
                &codiagonal(&b),
                &compose(&direct_sum(&f, &g), &diagonal(&a))?,
            )?;
            w.diff(&via, &add(&f, &g)?);
        }
        Ok(w.0)
    });

    let swaps = eval(|| {
        let mut w = Worst::default();
        let round = compose(&swap(&b, &a), &swap(&a, &b))?;
        w.diff(&round, &Morphism::identity(&SpaceObject::tensor(&a, &b)));
        w.diff(&swap(&SpaceObject::unit(), &a), &Morphism::identity(&a));
        for _ in 0..samples {
            let f = matrix(rng, &a, &b);
            let g = matrix(rng, &c, &a);
            let left = compose(&swap(&b, &a), &tensor(&f, &g))?;
            let right = compose(&tensor(&g, &f), &swap(&a, &c))?;
            w.diff(&left, &right);
        }
        Ok(w.0)
    });

    let snake = eval(|| {
        let mut w = Worst::default();
        let a_star = SpaceObject::dual(&a);
        let (zeta, theta) = duality_pair(&a);
        let id_a = Morphism::identity(&a);
        let id_s = Morphism::identity(&a_star);
        let first = compose(&tensor(&id_a, &theta), &tensor(&zeta, &id_a))?;
        w.diff(&first, &id_a);
        let second = compose(&tensor(&theta, &id_s), &tensor(&id_s, &zeta))?;
        w.diff(&second, &id_s);
        let trace = compose(&theta, &compose(&swap(&a, &a_star), &zeta)?)?;
        w.diff(&trace, &Morphism::scalar(Cplx::new(d as f64, 0.0)));
        for i in 0..d {
            for j in 0..d {
                let pair = tensor(
                    &Morphism::basis_state(&a_star, i),
                    &Morphism::basis_state(&a, j),
                );
                let want = if i == j { ONE } else { ZERO };
                w.diff(&compose(&theta, &pair)?, &Morphism::scalar(want));
            }
        }
        Ok(w.0)
    });

    let names = eval(|| {
        let mut w = Worst::default();
        let (_, theta_b) = duality_pair(&b);
        let id_c = Morphism::identity(&c);
        let id_as = Morphism::identity(&SpaceObject::dual(&a));
        let glue = tensor(&tensor(&id_c, &theta_b), &id_as);
        for _ in 0..samples {
            let h = matrix(rng, &a, &b);
            let k = matrix(rng, &b, &c);
            let joined = compose(&glue, &tensor(&k.name_of(), &h.name_of()))?;
            w.diff(&joined, &compose(&k, &h)?.name_of());
            w.diff(&h.transpose_of().transpose_of(), &h);
        }
        let (zeta, _) = duality_pair(&a);
        w.diff(&Morphism::identity(&a).name_of(), &zeta);
        Ok(w.0)
    });

    vec![
        ctx.report(LawId::LinalgBilinearity, &inst, bilinearity),
        ctx.report(LawId::LinalgInterchange, &inst, interchange),
        ctx.report(LawId::LinalgScalars, &inst, scalars),
        ctx.report(LawId::LinalgBiproduct, &inst, biproduct),
        ctx.report(LawId::LinalgSwap, &inst, swaps),
        ctx.report(LawId::LinalgSnake, &inst, snake),
        ctx.report(LawId::LinalgNames, &inst, names),
    ]
}

/// Symmetric powers of `C^d` in degree `n`.
pub fn check_symtensor(ctx: &mut CheckContext, d: usize, n: usize) -> Vec<LawReport> {
    let a = SpaceObject::base(d);
    let inst = format!("d={d} n={n}");
    let samples = ctx.samples;
    let rng = &mut ctx.rng;

    let dimension = eval(|| {
        let total = d.pow(n as u32);
        let mut count = 0usize;
        for t in 0..total {
            let mut x = t;
            let mut prev = 0;
            let mut sorted = true;
            let mut digits = vec![0; n];
            for slot in digits.iter_mut().rev() {
                *slot = x % d.max(1);
                x /= d.max(1);
            }
            for &v in &digits {
                if v < prev {
                    sorted = false;
                }
                prev = v;
            }
            if sorted {
                count += 1;
            }
        }
        if d == 0 {
            count = usize::from(n == 0);
        }
        let formula = multiset_count(d, n);
        let built = sym_isometry_dag(&a, n).cols();
        Ok((count.abs_diff(formula) + built.abs_diff(formula)) as f64)
    });

    let coisometry = eval(|| {
        let s = sym_projection(&a, n);
        let ss = compose(&s, &s.dagger())?;
        Ok(ss.max_abs_diff(&Morphism::identity(ss.dom())))
    });

    let average = eval(|| {
        let perms = all_perms(n);
        let obj = SpaceObject::tensor_power(&a, n);
        let mut total = Morphism::zero(&obj, &obj);
        for p in &perms {
            total = add(&total, &permutation_unitary(&a, p)?)?;
        }
        let avg = total.scale_real(1.0 / perms.len() as f64);
        Ok(symmetrizer(&a, n).max_abs_diff(&avg))
    });

    let naturality = eval(|| {
        let mut w = Worst::default();
        let p = symmetrizer(&a, n);
        for _ in 0..samples {
            let f = tensor_power(&matrix(rng, &a, &a), n);
            w.diff(&compose(&f, &p)?, &compose(&p, &f)?);
        }
        let mut cycle: Vec<usize> = (1..=n).collect();
        if n > 0 {
            cycle[n - 1] = 0;
        }
        for perm in [cycle, (0..n).rev().collect()] {
            let u = permutation_unitary(&a, &perm)?;
            w.diff(&compose(&u, &p)?, &p);
            w.diff(&compose(&u, &p)?, &compose(&p, &u)?);
        }
        Ok(w.0)
    });

    let functoriality = eval(|| {
        let mut w = Worst::default();
        let b = SpaceObject::base(d + 1);
        let id = sym_power(&Morphism::identity(&a), n);
        w.diff(&id, &Morphism::identity(id.dom()));
        for _ in 0..samples {
            let f = matrix(rng, &a, &b);
            let g = matrix(rng, &b, &a);
            let whole = sym_power(&compose(&g, &f)?, n);
            let parts = compose(&sym_power(&g, n), &sym_power(&f, n))?;
            w.diff(&whole, &parts);
        }
        Ok(w.0)
    });

    let mut out = vec![
        ctx.report(LawId::SymDimension, &inst, dimension),
        ctx.report(LawId::SymCoisometry, &inst, coisometry),
        ctx.report(LawId::SymNaturality, &inst, naturality),
        ctx.report(LawId::SymFunctoriality, &inst, functoriality),
    ];
    // the brute-force average needs all n! permutation matrices
    if n <= 4 && d.pow(n as u32) <= 256 {
        out.push(ctx.report(LawId::SymAverage, &inst, average));
    }
    out
}

/// Coassociativity, counit and cocommutativity of a comonoid.
pub fn check_comonoid(ctx: &CheckContext, co: &ComonoidPresentation, instance: &str) -> LawReport {
    ctx.report(LawId::FockComonoid, instance, Ok(co.residuals().max()))
}

fn swap_middle(m: &Morphism, dim: usize) -> Morphism {
    let cols = m.cols();
    let src = m.entries();
    let mut data = vec![ZERO; src.len()];
    let d2 = dim * dim;
    let d3 = d2 * dim;
    for (row, chunk) in src.chunks(cols.max(1)).enumerate().take(m.rows()) {
        let (a, b, c, e) = (row / d3, (row / d2) % dim, (row / dim) % dim, row % dim);
        let target = a * d3 + c * d2 + b * dim + e;
        data[target * cols..(target + 1) * cols].copy_from_slice(chunk);
    }
    Morphism::from_entries(m.dom().clone(), m.cod().clone(), data)
        .expect("permuted entries stay finite")
}

/// The four bialgebra diagrams for `(F(A), d, e, d†, e†)` on inputs of total
/// degree at most the cutoff. Small carriers are checked on every basis
/// vector, large ones on `ctx.samples` random vectors of that subspace.
pub fn check_bialgebra(
    ctx: &mut CheckContext,
    co: &ComonoidPresentation,
    instance: &str,
) -> LawReport {
    let samples = ctx.samples;
    let rng = &mut ctx.rng;
    let deviation = eval(|| {
        let carrier = co.carrier();
        let cutoff = carrier
            .normalized()
            .fock_parts()
            .map(|(_, n)| n)
            .ok_or_else(|| Error::InvariantViolation(format!("{carrier} is not a Fock space")))?;
        let dim = carrier.dim();
        let ff = SpaceObject::tensor(carrier, carrier);
        let d = co.comult();
        let e = co.counit();
        let (dd, ed) = (d.dagger(), e.dagger());
        let probe = if dim.pow(6) <= 1 << 22 {
            restrict_input_degree(&Morphism::identity(&ff), cutoff)?
        } else {
            let raw = matrix(rng, &SpaceObject::base(samples), &ff);
            restrict_total_degree(&raw, cutoff)?
        };
        let mut w = Worst::default();
        let left = compose(d, &compose(&dd, &probe)?)?;
        let split = swap_middle(&compose_tensor(d, d, &probe)?, dim);
        let right = compose_tensor(&dd, &dd, &split)?;
        w.diff(&left, &right);
        let deg = degree_map(&ff)?;
        let keep: Vec<bool> = deg.iter().map(|&k| k <= cutoff).collect();
        w.diff(
            &compose(e, &dd)?.mask_cols(&keep),
            &tensor(e, e).mask_cols(&keep),
        );
        w.diff(&compose(d, &ed)?, &tensor(&ed, &ed));
        w.diff(&compose(e, &ed)?, &Morphism::scalar(ONE));
        Ok(w.0)
    });
    ctx.report(LawId::FockBialgebra, instance, deviation)
}

/// Functoriality, orthonormality, comonoid and bialgebra laws, additivity
/// and the single-particle split of `F(C^d)`.
pub fn check_fock(ctx: &mut CheckContext, d: usize, n: usize) -> Vec<LawReport> {
    let f = fock(ctx, d, n);
    let a = f.base().clone();
    let inst = grid(d, n);
    let samples = ctx.samples;

    let functoriality = eval(|| {
        let rng = &mut ctx.rng;
        let mut w = Worst::default();
        let id = fock_map(&f, &f, &Morphism::identity(&a))?;
        w.diff(&id, &Morphism::identity(f.object()));
        for _ in 0..samples {
            let g = matrix(rng, &a, &a);
            let h = matrix(rng, &a, &a);
            let whole = fock_map(&f, &f, &compose(&g, &h)?)?;
            let parts = compose(&fock_map(&f, &f, &g)?, &fock_map(&f, &f, &h)?)?;
            w.diff(&whole, &parts);
            w.diff(
                &fock_map(&f, &f, &g.dagger())?,
                &fock_map(&f, &f, &g)?.dagger(),
            );
        }
        Ok(w.0)
    });

    let orthonormality = eval(|| {
        let mut w = Worst::default();
        let e = counit_e(&f);
        let eps = epsilon_single(&f)?;
        w.diff(&compose(&eps, &eps.dagger())?, &Morphism::identity(&a));
        w.diff(&compose(&e, &e.dagger())?, &Morphism::scalar(ONE));
        w.see(compose(&e, &eps.dagger())?.max_abs());
        Ok(w.0)
    });

    let co = fock_comonoid(&f);
    let comonoid = check_comonoid(ctx, &co, &inst);
    let bialgebra = check_bialgebra(ctx, &co, &inst);

    let additivity = eval(|| {
        let rng = &mut ctx.rng;
        let mut w = Worst::default();
        let b = SpaceObject::base(if d > 1 { d - 1 } else { 2 });
        let fb = f.over(&b);
        let da = co.comult();
        let db = comultiplication(&fb);
        for _ in 0..samples {
            let g = matrix(rng, &a, &b);
            let h = matrix(rng, &a, &b);
            let whole = fock_map(&f, &fb, &add(&g, &h)?)?;
            let split = compose_tensor(&fock_map(&f, &fb, &g)?, &fock_map(&f, &fb, &h)?, da)?;
            w.diff(&whole, &compose(&db.dagger(), &split)?);
        }
        Ok(w.0)
    });

    let split = eval(|| {
        let e = counit_e(&f);
        let eps = epsilon_single(&f)?;
        let left = compose(&eps, &co.comult().dagger())?;
        let right = add(&tensor(&eps, &e), &tensor(&e, &eps))?;
        Ok(left.max_abs_diff(&right))
    });

    vec![
        ctx.report(LawId::FockFunctoriality, &inst, functoriality),
        ctx.report(LawId::FockOrthonormality, &inst, orthonormality),
        comonoid,
        bialgebra,
        ctx.report(LawId::FockAdditivity, &inst, additivity),
        ctx.report(LawId::FockSingleParticleSplit, &inst, split),
    ]
}

/// The product isomorphism `k` for `A = C^{d_a}`, `B = C^{d_b}`.
pub fn check_k_pair(ctx: &mut CheckContext, da: usize, db: usize, n: usize) -> Vec<LawReport> {
    let coeffs = ctx.coefficients.clone();
    let a = SpaceObject::base(da);
    let b = SpaceObject::base(db);
    let inst = format!("dA={da} dB={db} N={n}");
    let fa = FockSpace::with_coefficients(&a, n, coeffs.clone());
    let fb = fa.over(&b);
    let parts = vec![a.clone(), b.clone()];
    let fab = fa.over(&SpaceObject::biproduct(parts.clone()));

    let k = k_decompose_with(&a, &b, n, &coeffs);

    let unitarity = eval(|| {
        let mut w = Worst::default();
        w.diff(&compose(&k.dagger(), &k)?, &Morphism::identity(k.dom()));
        let onto = restrict_total_degree(&Morphism::identity(k.cod()), n)?;
        w.diff(&compose(&k, &k.dagger())?, &onto);
        Ok(w.0)
    });

    let products = eval(|| {
        let mut w = Worst::default();
        let (ea, eb) = (counit_e(&fa), counit_e(&fb));
        let (eps_a, eps_b) = (epsilon_single(&fa)?, epsilon_single(&fb)?);
        let ia = compose(&injection(&parts, 0)?, &eps_a)?;
        let ib = compose(&injection(&parts, 1)?, &eps_b)?;
        let r = add(&tensor(&ia, &eb), &tensor(&ea, &ib))?;
        let left = compose(&epsilon_single(&fab)?, &k.dagger())?;
        w.diff(&left, &r);
        let pa = fock_map(&fab, &fa, &projection(&parts, 0)?)?;
        w.diff(
            &pa,
            &compose_tensor(&Morphism::identity(fa.object()), &eb, &k)?,
        );
        let pb = fock_map(&fab, &fb, &projection(&parts, 1)?)?;
        w.diff(
            &pb,
            &compose_tensor(&ea, &Morphism::identity(fb.object()), &k)?,
        );
        Ok(w.0)
    });

    vec![
        ctx.report(LawId::KUnitarity, &inst, unitarity),
        ctx.report(LawId::KProducts, &inst, products),
    ]
}

/// `k` on `C^d ⊕ C^1` plus the descriptions of `d` and `e` through `k`.
pub fn check_k(ctx: &mut CheckContext, d: usize, n: usize) -> Vec<LawReport> {
    let mut out = check_k_pair(ctx, d, 1, n);
    let f = fock(ctx, d, n);
    let a = f.base().clone();
    let inst = grid(d, n);

    let comult = eval(|| {
        let faa = f.over(&SpaceObject::biproduct(vec![a.clone(), a.clone()]));
        let kaa = k_decompose_with(&a, &a, n, &ctx.coefficients);
        let via = compose(&kaa, &fock_map(&f, &faa, &diagonal(&a))?)?;
        Ok(via.max_abs_diff(&comultiplication(&f)))
    });

    let counit = eval(|| {
        let zero = SpaceObject::zero();
        let f0 = f.over(&zero);
        let k0 = Morphism::identity(f0.object()).cast(f0.object(), &SpaceObject::unit())?;
        let via = compose(&k0, &fock_map(&f, &f0, &Morphism::zero(&a, &zero))?)?;
        Ok(via.max_abs_diff(&counit_e(&f)))
    });

    out.push(ctx.report(LawId::KComultiplication, &inst, comult));
    out.push(ctx.report(LawId::KCounit, &inst, counit));
    out
}

/// Residuals of the commutation relations for one pair of states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CcrResiduals {
    /// `[a_φ, a†_ψ] - <φ,ψ>` on input sectors `<= N-1`.
    pub mixed: f64,
    /// The same residual on every sector; nonzero because of the cutoff.
    pub mixed_unrestricted: f64,
    /// `[a†_φ, a†_ψ]` on input sectors `<= N-2`.
    pub raising: f64,
    /// `[a_φ, a_ψ]` everywhere.
    pub lowering: f64,
}

pub fn ccr_residuals(f: &FockSpace, phi: &Morphism, psi: &Morphism) -> Result<CcrResiduals> {
    let n = f.cutoff();
    let up_phi = raising(f, phi)?;
    let up_psi = raising(f, psi)?;
    let down_phi = lowering(f, phi)?;
    let down_psi = lowering(f, psi)?;
    let overlap = inner(phi, psi)?;
    let id = Morphism::identity(f.object());

    let comm = compose(&down_phi, &up_psi)?.sub(&compose(&up_psi, &down_phi)?)?;
    let residual = comm.sub(&id.scale(overlap))?;
    let mixed = restrict_input_below(&residual, n.checked_sub(1))?.max_abs();

    let rr = compose(&up_phi, &up_psi)?.sub(&compose(&up_psi, &up_phi)?)?;
    let raising = restrict_input_below(&rr, n.checked_sub(2))?.max_abs();

    let ll = compose(&down_phi, &down_psi)?.sub(&compose(&down_psi, &down_phi)?)?;

    Ok(CcrResiduals {
        mixed,
        mixed_unrestricted: residual.max_abs(),
        raising,
        lowering: ll.max_abs(),
    })
}

/// The three commutation relations for one pair of states.
pub fn check_ccr(
    ctx: &CheckContext,
    f: &FockSpace,
    phi: &Morphism,
    psi: &Morphism,
    instance: &str,
) -> Vec<LawReport> {
    let r = ccr_residuals(f, phi, psi);
    let pick = |g: fn(&CcrResiduals) -> f64| r.as_ref().map(g).map_err(Clone::clone);
    vec![
        ctx.report(LawId::CcrMixed, instance, pick(|r| r.mixed)),
        ctx.report(LawId::CcrRaising, instance, pick(|r| r.raising)),
        ctx.report(LawId::CcrLowering, instance, pick(|r| r.lowering)),
    ]
}

fn merge(groups: Vec<Vec<LawReport>>, ctx: &CheckContext) -> Vec<LawReport> {
    let mut out: Vec<LawReport> = Vec::new();
    for group in groups {
        for r in group {
            match out
                .iter_mut()
                .find(|o| o.law_id == r.law_id && o.instance == r.instance)
            {
                Some(o) => {
                    let mut w = Worst(o.max_abs_deviation);
                    w.see(r.max_abs_deviation);
                    *o = LawReport::new(o.law_id, o.instance.clone(), w.0, ctx.tolerance);
                }
                None => out.push(r),
            }
        }
    }
    out
}

fn probe_pairs(ctx: &mut CheckContext, a: &SpaceObject) -> Vec<(Morphism, Morphism)> {
    let states = probe_states(&mut ctx.rng, a, ctx.samples);
    let mut pairs: Vec<(Morphism, Morphism)> = Vec::new();
    for (i, phi) in states.iter().enumerate() {
        let psi = unit_state(&mut ctx.rng, a);
        pairs.push((phi.clone(), psi));
        pairs.push((phi.clone(), states[(i + 1) % states.len()].clone()));
    }
    // φ = ψ gives a commutator equal to |φ|² id
    pairs.push((states[0].clone(), states[0].clone()));
    pairs
}

/// Commutation relations over random and degenerate pairs on `F(C^d)`.
pub fn check_ccr_grid(ctx: &mut CheckContext, d: usize, n: usize) -> Vec<LawReport> {
    let f = fock(ctx, d, n);
    let inst = grid(d, n);
    let pairs = probe_pairs(ctx, f.base());
    let groups = pairs
        .iter()
        .map(|(phi, psi)| check_ccr(ctx, &f, phi, psi, &inst))
        .collect();
    merge(groups, ctx)
}

/// Independent oracle for `|Coh(φ)|²`: the partial exponential series.
pub fn coherent_norm_oracle(norm_sqr: f64, cutoff: usize) -> f64 {
    let mut term = 1.0;
    let mut total = 1.0;
    for n in 1..=cutoff {
        term *= norm_sqr / n as f64;
        total += term;
    }
    total
}

/// Copy, delete, eigenstate and norm laws of `Coh(φ)`; `psi` selects the
/// lowering morphism.
pub fn check_coherent(
    ctx: &CheckContext,
    f: &FockSpace,
    phi: &Morphism,
    psi: &Morphism,
    instance: &str,
) -> Vec<LawReport> {
    let n = f.cutoff();
    let coh = coherent_state(f, phi);
    let coh = match coh {
        Ok(c) => c,
        Err(e) => {
            return [
                LawId::CoherentCopy,
                LawId::CoherentDelete,
                LawId::CoherentEigenstate,
                LawId::CoherentNorm,
            ]
            .iter()
            .map(|&l| ctx.report(l, instance, Err(e.clone())))
            .collect()
        }
    };

    let copy = eval(|| {
        let left = restrict_total_degree(&compose(&comultiplication(f), &coh)?, n)?;
        let right = restrict_total_degree(&tensor(&coh, &coh), n)?;
        Ok(left.max_abs_diff(&right))
    });

    let delete = eval(|| Ok(compose(&counit_e(f), &coh)?.max_abs_diff(&Morphism::scalar(ONE))));

    let eigen = eval(|| {
        let lowered = compose(&lowering(f, psi)?, &coh)?;
        let scaled = coh.scale(inner(psi, phi)?);
        let below = n.checked_sub(1);
        let mut w = Worst::default();
        w.diff(
            &restrict_output_below(&lowered, below)?,
            &restrict_output_below(&scaled, below)?,
        );
        let top: Vec<bool> = f.degrees().iter().map(|&k| k == n).collect();
        w.see(lowered.mask_rows(&top).max_abs());
        Ok(w.0)
    });

    let norm = eval(|| {
        let oracle = coherent_norm_oracle(phi.norm_sqr(), n);
        Ok((coh.norm_sqr() - oracle).abs())
    });

    vec![
        ctx.report(LawId::CoherentCopy, instance, copy),
        ctx.report(LawId::CoherentDelete, instance, delete),
        ctx.report(LawId::CoherentEigenstate, instance, eigen),
        ctx.report(LawId::CoherentNorm, instance, norm),
    ]
}

/// Coherent-state laws over random, scaled and degenerate states.
pub fn check_coherent_grid(ctx: &mut CheckContext, d: usize, n: usize) -> Vec<LawReport> {
    let f = fock(ctx, d, n);
    let inst = grid(d, n);
    let mut pairs = probe_pairs(ctx, f.base());
    for _ in 0..ctx.samples {
        let phi = state_within(&mut ctx.rng, f.base(), 2.0);
        let psi = state_within(&mut ctx.rng, f.base(), 2.0);
        pairs.push((phi, psi));
    }
    let groups = pairs
        .iter()
        .map(|(phi, psi)| check_coherent(ctx, &f, phi, psi, &inst))
        .collect();
    merge(groups, ctx)
}

/// `ε Rη = id` and the comonoid-morphism property of `Rη` for a comonoid
/// on the base of `f`.
pub fn check_adjunction(
    ctx: &CheckContext,
    f: &FockSpace,
    co: &ComonoidPresentation,
    instance: &str,
) -> Vec<LawReport> {
    let n = f.cutoff();
    let eta = eta_comonoid(co, f);
    let triangle = eval(|| {
        let eta = eta.clone()?;
        let back = compose(&epsilon_single(f)?, &eta)?;
        Ok(back.max_abs_diff(&Morphism::identity(f.base())))
    });
    let morphism = eval(|| {
        let eta = eta.clone()?;
        let mut w = Worst::default();
        let left = restrict_total_degree(&compose(&comultiplication(f), &eta)?, n)?;
        let right = restrict_total_degree(&compose_tensor(&eta, &eta, co.comult())?, n)?;
        w.diff(&left, &right);
        w.diff(&compose(&counit_e(f), &eta)?, co.counit());
        Ok(w.0)
    });
    vec![
        ctx.report(LawId::AdjunctionCounitTriangle, instance, triangle),
        ctx.report(LawId::AdjunctionEtaComonoidMorphism, instance, morphism),
    ]
}

/// Whether `F(F(A))` is small enough to build densely.
pub fn unit_triangle_feasible(f: &FockSpace) -> bool {
    (f.dim() as f64).powi(f.cutoff() as i32) <= 1000.0
}

/// `F(ε_A) ∘ Rη_{Q(A)} = id_{F(A)}`, with the outer Fock space built at the
/// same cutoff.
pub fn check_unit_triangle(ctx: &CheckContext, f: &FockSpace, instance: &str) -> LawReport {
    let deviation = eval(|| {
        let outer = f.over(f.object());
        let eta = eta_comonoid(&fock_comonoid(f), &outer)?;
        let lifted = fock_map(&outer, f, &epsilon_single(f)?)?;
        Ok(compose(&lifted, &eta)?.max_abs_diff(&Morphism::identity(f.object())))
    });
    ctx.report(LawId::AdjunctionUnitTriangle, instance, deviation)
}

/// Triangle identities for the unit comonoid, the copying comonoid on `C^d`
/// and the flipped elementwise monoid, plus the unit triangle when feasible.
pub fn check_adjunction_grid(ctx: &mut CheckContext, d: usize, n: usize) -> Vec<LawReport> {
    let f = fock(ctx, d, n);
    let inst = grid(d, n);
    let fi = f.over(&SpaceObject::unit());
    let mut groups = vec![
        check_adjunction(
            ctx,
            &fi,
            &ComonoidPresentation::unit_comonoid(),
            &format!("unit N={n}"),
        ),
        check_adjunction(
            ctx,
            &f,
            &ComonoidPresentation::copy(f.base()),
            &format!("copy {inst}"),
        ),
        check_adjunction(
            ctx,
            &f,
            &dagger_flip_monoid(&MonoidPresentation::elementwise(d)),
            &format!("flipped elementwise {inst}"),
        ),
    ];
    if unit_triangle_feasible(&f) {
        groups.push(vec![check_unit_triangle(ctx, &f, &inst)]);
    }
    groups.concat()
}

/// Exponentials in the flipped Fock monoid `(F(A), d†, e†)` and in the
/// elementwise monoid on `C^d`.
pub fn check_exponentials(
    ctx: &mut CheckContext,
    f: &FockSpace,
    phi: &Morphism,
    psi: &Morphism,
    instance: &str,
) -> Vec<LawReport> {
    let n = f.cutoff();
    let a = f.base().clone();
    let d = a.dim();
    let flipped = dagger_flip(&fock_comonoid(f));
    let eps_dag = epsilon_single(f).map(|e| e.dagger());

    let raising_law = eval(|| {
        let series = endo_exp(&raising(f, phi)?, n)?;
        let grown = compose(&series, &vacuum_state(f))?;
        Ok(grown.max_abs_diff(&coherent_state(f, phi)?))
    });

    let coherent = eval(|| {
        let x = compose(eps_dag.as_ref().map_err(Clone::clone)?, phi)?;
        Ok(monoid_exp(&flipped, &x, n)?.max_abs_diff(&coherent_state(f, phi)?))
    });

    let zero = eval(|| {
        let mut w = Worst::default();
        let z = Morphism::zero(&SpaceObject::unit(), f.object());
        w.diff(&monoid_exp(&flipped, &z, n)?, &vacuum_state(f));
        let elementwise = MonoidPresentation::elementwise(d);
        let z = Morphism::zero(&SpaceObject::unit(), &a);
        w.diff(&monoid_exp(&elementwise, &z, 20)?, elementwise.unit());
        Ok(w.0)
    });

    let additive = eval(|| {
        let mut w = Worst::default();
        let eps_dag = eps_dag.as_ref().map_err(Clone::clone)?;
        let x = compose(eps_dag, phi)?;
        let y = compose(eps_dag, psi)?;
        let product = compose(
            flipped.mult(),
            &tensor(&monoid_exp(&flipped, &x, n)?, &monoid_exp(&flipped, &y, n)?),
        )?;
        w.diff(&product, &monoid_exp(&flipped, &add(&x, &y)?, n)?);
        let elementwise = MonoidPresentation::elementwise(d);
        let (p, q) = (phi, psi);
        let product = compose(
            elementwise.mult(),
            &tensor(
                &monoid_exp(&elementwise, p, 20)?,
                &monoid_exp(&elementwise, q, 20)?,
            ),
        )?;
        w.diff(&product, &monoid_exp(&elementwise, &add(p, q)?, 20)?);
        Ok(w.0)
    });

    let naturality = eval(|| {
        let mut w = Worst::default();
        let eps_dag = eps_dag.as_ref().map_err(Clone::clone)?;
        let x = compose(eps_dag, phi)?;
        let g = matrix(&mut ctx.rng, &a, &a).scale_real(0.5);
        let fg = fock_map(f, f, &g)?;
        let pushed = compose(&fg, &monoid_exp(&flipped, &x, n)?)?;
        w.diff(&monoid_exp(&flipped, &compose(&fg, &x)?, n)?, &pushed);
        let big = MonoidPresentation::elementwise(d + 1);
        let small = MonoidPresentation::elementwise(d);
        let drop_last =
            Morphism::from_fn(SpaceObject::base(d + 1), SpaceObject::base(d), |r, c| {
                if r == c {
                    ONE
                } else {
                    ZERO
                }
            });
        let v = state_within(&mut ctx.rng, &SpaceObject::base(d + 1), 1.0);
        let pushed = compose(&drop_last, &monoid_exp(&big, &v, 20)?)?;
        w.diff(&monoid_exp(&small, &compose(&drop_last, &v)?, 20)?, &pushed);
        Ok(w.0)
    });

    vec![
        ctx.report(LawId::ExpRaising, instance, raising_law),
        ctx.report(LawId::ExpCoherent, instance, coherent),
        ctx.report(LawId::ExpZero, instance, zero),
        ctx.report(LawId::ExpAdditive, instance, additive),
        ctx.report(LawId::ExpNaturality, instance, naturality),
    ]
}

pub fn check_exponentials_grid(ctx: &mut CheckContext, d: usize, n: usize) -> Vec<LawReport> {
    let f = fock(ctx, d, n);
    let inst = grid(d, n);
    let mut groups = Vec::new();
    for _ in 0..ctx.samples {
        let phi = state_within(&mut ctx.rng, f.base(), 1.0);
        let psi = state_within(&mut ctx.rng, f.base(), 1.0);
        groups.push(check_exponentials(ctx, &f, &phi, &psi, &inst));
    }
    merge(groups, ctx)
}

/// Multiplication, unit and retraction properties of the embedding of a
/// monoid into the endomorphisms of its carrier.
pub fn check_embedding(
    ctx: &CheckContext,
    mono: &MonoidPresentation,
    instance: &str,
) -> Vec<LawReport> {
    let carrier = mono.carrier().clone();
    let m = monoid_embed(mono);
    let endo = endo_monoid(&carrier);
    let mult = eval(|| {
        let left = compose(&m, mono.mult())?;
        let right = compose(endo.mult(), &tensor(&m, &m))?;
        Ok(left.max_abs_diff(&right))
    });
    let unit = eval(|| Ok(compose(&m, mono.unit())?.max_abs_diff(endo.unit())));
    let retraction = eval(|| {
        let r = tensor(&Morphism::identity(&carrier), &mono.unit().transpose_of());
        Ok(compose(&r, &m)?.max_abs_diff(&Morphism::identity(&carrier)))
    });
    vec![
        ctx.report(LawId::EmbedMultiplication, instance, mult),
        ctx.report(LawId::EmbedUnit, instance, unit),
        ctx.report(LawId::EmbedRetraction, instance, retraction),
    ]
}

/// A random two-dimensional commutative monoid: `C[x]/(x² - ax - b)`
/// transported along a random well-conditioned change of basis.
pub fn random_commutative_monoid(rng: &mut impl Rng) -> MonoidPresentation {
    let a = gaussian(rng) * 0.5;
    let b = gaussian(rng) * 0.5;
    let obj = SpaceObject::base(2);
    loop {
        let t = matrix(rng, &obj, &obj);
        let (p, q, r, s) = (t.get(0, 0), t.get(0, 1), t.get(1, 0), t.get(1, 1));
        let det = p * s - q * r;
        if det.norm() < 0.3 {
            continue;
        }
        let inv = Morphism::from_entries(
            obj.clone(),
            obj.clone(),
            vec![s / det, -q / det, -r / det, p / det],
        )
        .expect("finite");
        return MonoidPresentation::quadratic(a, b)
            .transport(&t, &inv)
            .expect("2x2 transport");
    }
}

/// Embedding laws for the elementwise monoid on `C^2` and a random
/// commutative monoid, with the additive exponential law on the latter.
pub fn check_embedding_standard(ctx: &mut CheckContext) -> Vec<LawReport> {
    let random = random_commutative_monoid(&mut ctx.rng);
    let obj = SpaceObject::base(2);
    let mut groups = vec![
        check_embedding(ctx, &MonoidPresentation::elementwise(2), "elementwise d=2"),
        check_embedding(ctx, &random, "random quadratic"),
    ];
    let mut w = Worst::default();
    let mut failure = None;
    for _ in 0..ctx.samples {
        let phi = state_within(&mut ctx.rng, &obj, 1.0);
        let psi = state_within(&mut ctx.rng, &obj, 1.0);
        let r = eval(|| {
            let product = compose(
                random.mult(),
                &tensor(
                    &monoid_exp(&random, &phi, 20)?,
                    &monoid_exp(&random, &psi, 20)?,
                ),
            )?;
            Ok(product.max_abs_diff(&monoid_exp(&random, &add(&phi, &psi)?, 20)?))
        });
        match r {
            Ok(x) => w.see(x),
            Err(e) => failure = Some(e),
        }
    }
    let additive = match failure {
        Some(e) => Err(e),
        None => Ok(w.0),
    };
    groups.push(vec![ctx.report(
        LawId::ExpAdditive,
        "random quadratic",
        additive,
    )]);
    groups.concat()
}
