//! Tensor powers, symmetric powers and the symmetrizer.
//!
//! The symmetric power `S_n(A)` is given the occupation-number basis: one
//! vector per multiset of `n` indices from `0..dim(A)`, ordered
//! lexicographically. The isometry `s†: S_n(A) -> A^{⊗n}` sends the multiset
//! `λ` to the normalized sum of the `M_λ` distinct product vectors it labels.

use std::collections::HashMap;

use crate::combinatorics::{factorial, multiset_count};
use crate::error::{Error, Result};
use crate::morphism::{compose, tensor, Cplx, Morphism, ONE, ZERO};
use crate::space::SpaceObject;

/// Lexicographically ordered non-decreasing index tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultisetBasis {
    base_dim: usize,
    degree: usize,
    elements: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl MultisetBasis {
    pub fn new(base_dim: usize, degree: usize) -> Self {
        let mut elements = Vec::with_capacity(multiset_count(base_dim, degree));
        let mut current = Vec::with_capacity(degree);
        enumerate(base_dim, degree, 0, &mut current, &mut elements);
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        MultisetBasis {
            base_dim,
            degree,
            elements,
            index,
        }
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn elements(&self) -> &[Vec<usize>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Position of a sorted tuple.
    pub fn position(&self, sorted: &[usize]) -> Option<usize> {
        self.index.get(sorted).copied()
    }

    /// Occupation numbers `m_i` of element `k`.
    pub fn occupations(&self, k: usize) -> Vec<usize> {
        let mut occ = vec![0; self.base_dim];
        for &i in &self.elements[k] {
            occ[i] += 1;
        }
        occ
    }
}

fn enumerate(
    d: usize,
    n: usize,
    start: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if current.len() == n {
        out.push(current.clone());
        return;
    }
    for i in start..d {
        current.push(i);
        enumerate(d, n, i, current, out);
        current.pop();
    }
}

pub fn multiset_basis(d: usize, n: usize) -> MultisetBasis {
    MultisetBasis::new(d, n)
}

/// Number of distinct orderings of a multiset: `n! / ∏ m_i!`.
pub fn orbit_size(occupations: &[usize]) -> f64 {
    let n: usize = occupations.iter().sum();
    factorial(n) / occupations.iter().map(|&m| factorial(m)).product::<f64>()
}

/// `S_n(A)` together with its basis.
#[derive(Debug, Clone)]
pub struct SymmetricSpace {
    base: SpaceObject,
    degree: usize,
    object: SpaceObject,
    basis: MultisetBasis,
}

impl SymmetricSpace {
    pub fn new(base: &SpaceObject, degree: usize) -> Self {
        SymmetricSpace {
            base: base.clone(),
            degree,
            object: sym_object(base, degree),
            basis: MultisetBasis::new(base.dim(), degree),
        }
    }

    pub fn base(&self) -> &SpaceObject {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn object(&self) -> &SpaceObject {
        &self.object
    }

    pub fn basis(&self) -> &MultisetBasis {
        &self.basis
    }
}

/// The object `S_n(A)`; degree 0 is the unit and degree 1 is `A` itself.
pub fn sym_object(base: &SpaceObject, degree: usize) -> SpaceObject {
    match degree {
        0 => SpaceObject::unit(),
        1 => base.clone(),
        _ => SpaceObject::sym(base, degree),
    }
}

fn digits(mut t: usize, d: usize, n: usize, out: &mut [usize]) {
    for slot in out[..n].iter_mut().rev() {
        *slot = t % d;
        t /= d;
    }
}

/// Permutation of tensor factors on `A^{⊗n}` moving factor `i` to position
/// `perm[i]`.
pub fn permutation_unitary(a: &SpaceObject, perm: &[usize]) -> Result<Morphism> {
    let n = perm.len();
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::InvariantViolation(format!(
                "{perm:?} is not a permutation"
            )));
        }
        seen[p] = true;
    }
    let d = a.dim();
    let obj = SpaceObject::tensor_power(a, n);
    let size = obj.dim();
    let mut data = vec![ZERO; size * size];
    let mut x = vec![0; n];
    let mut y = vec![0; n];
    for t in 0..size {
        digits(t, d, n, &mut x);
        for i in 0..n {
            y[perm[i]] = x[i];
        }
        let out = y.iter().fold(0, |acc, &v| acc * d + v);
        data[out * size + t] = ONE;
    }
    Morphism::from_entries(obj.clone(), obj, data)
}

/// The isometry `s_A^n†: S_n(A) -> A^{⊗n}`.
pub fn sym_isometry_dag(a: &SpaceObject, n: usize) -> Morphism {
    let d = a.dim();
    let space = SymmetricSpace::new(a, n);
    let basis = space.basis();
    let cols = basis.len();
    let weights: Vec<f64> = (0..cols)
        .map(|k| 1.0 / orbit_size(&basis.occupations(k)).sqrt())
        .collect();
    let cod = SpaceObject::tensor_power(a, n);
    let rows = cod.dim();
    let mut data = vec![ZERO; rows * cols];
    let mut x = vec![0; n];
    for t in 0..rows {
        digits(t, d, n, &mut x);
        x.sort_unstable();
        let k = basis
            .position(&x)
            .expect("every sorted tuple is a basis element");
        data[t * cols + k] = Cplx::new(weights[k], 0.0);
    }
    Morphism::raw(space.object().clone(), cod, data)
}

/// The coisometry `s_A^n: A^{⊗n} -> S_n(A)`.
pub fn sym_projection(a: &SpaceObject, n: usize) -> Morphism {
    sym_isometry_dag(a, n).dagger()
}

/// The orthogonal projector `s†s` onto symmetric tensors in `A^{⊗n}`.
pub fn symmetrizer(a: &SpaceObject, n: usize) -> Morphism {
    let sd = sym_isometry_dag(a, n);
    compose(&sd, &sd.dagger()).expect("s† and s compose")
}

/// `f^{⊗n}`, with `f^{⊗0} = id_I`.
pub fn tensor_power(f: &Morphism, n: usize) -> Morphism {
    if n == 0 {
        return Morphism::identity(&SpaceObject::unit());
    }
    (1..n).fold(f.clone(), |acc, _| tensor(&acc, f))
}

/// `S_n(f) = s_B^n ∘ f^{⊗n} ∘ s_A^n†`.
pub fn sym_power(f: &Morphism, n: usize) -> Morphism {
    let inner = tensor_power(f, n);
    let right = compose(&inner, &sym_isometry_dag(f.dom(), n)).expect("typed by construction");
    compose(&sym_projection(f.cod(), n), &right).expect("typed by construction")
}

/// Symmetric tensor product `s^n(v_1 ⊗ ... ⊗ v_n)` of states.
pub fn sym_state(states: &[Morphism]) -> Result<Morphism> {
    let base = match states.first() {
        Some(s) => s.cod().clone(),
        None => return Ok(Morphism::identity(&SpaceObject::unit())),
    };
    let prod = crate::morphism::tensor_all(states);
    compose(&sym_projection(&base, states.len()), &prod)
}
