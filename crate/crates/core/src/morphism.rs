//! Dense complex matrices typed by domain and codomain objects.
//!
//! Index conventions: the tensor product of spaces of dims `p` and `q` uses
//! the composite index `i * q + j`; a biproduct places part `n` at the offset
//! given by the dims of the parts before it. A morphism `A -> B` is stored
//! row-major with `dim(B)` rows and `dim(A)` columns.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par;
use crate::space::SpaceObject;

pub type Cplx = Complex64;

pub const ZERO: Cplx = Cplx::new(0.0, 0.0);
pub const ONE: Cplx = Cplx::new(1.0, 0.0);

#[derive(Clone, PartialEq)]
pub struct Morphism {
    dom: SpaceObject,
    cod: SpaceObject,
    data: Vec<Cplx>,
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Morphism {} -> {}", self.dom, self.cod)?;
        for r in 0..self.rows() {
            let row: Vec<String> = (0..self.cols())
                .map(|c| {
                    let z = self.get(r, c);
                    format!("{:+.4}{:+.4}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

fn check_finite(data: &[Cplx]) -> Result<()> {
    match data
        .iter()
        .position(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        Some(i) => Err(Error::InvariantViolation(format!(
            "non-finite entry at flat index {i}"
        ))),
        None => Ok(()),
    }
}

fn require(op: &'static str, expected: &SpaceObject, found: &SpaceObject) -> Result<()> {
    if expected.is_compatible(found) {
        Ok(())
    } else {
        Err(Error::DomainMismatch {
            op,
            expected: expected.clone(),
            found: found.clone(),
        })
    }
}

impl Morphism {
    /// Builds a morphism from row-major entries.
    pub fn from_entries(dom: SpaceObject, cod: SpaceObject, data: Vec<Cplx>) -> Result<Self> {
        if data.len() != dom.dim() * cod.dim() {
            return Err(Error::InvariantViolation(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                cod.dim(),
                dom.dim()
            )));
        }
        check_finite(&data)?;
        Ok(Morphism { dom, cod, data })
    }

    /// Internal constructor for data produced by finite arithmetic.
    pub(crate) fn raw(dom: SpaceObject, cod: SpaceObject, data: Vec<Cplx>) -> Self {
        debug_assert_eq!(data.len(), dom.dim() * cod.dim());
        Morphism { dom, cod, data }
    }

    pub fn from_fn(dom: SpaceObject, cod: SpaceObject, f: impl Fn(usize, usize) -> Cplx) -> Self {
        let (rows, cols) = (cod.dim(), dom.dim());
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Morphism { dom, cod, data }
    }

    /// A state `I -> cod` with the given amplitudes.
    pub fn state(cod: SpaceObject, amplitudes: Vec<Cplx>) -> Result<Self> {
        Self::from_entries(SpaceObject::unit(), cod, amplitudes)
    }

    /// The `i`-th standard basis state of `cod`.
    pub fn basis_state(cod: &SpaceObject, i: usize) -> Self {
        Self::from_fn(SpaceObject::unit(), cod.clone(), |r, _| {
            if r == i {
                ONE
            } else {
                ZERO
            }
        })
    }

    pub fn scalar(z: Cplx) -> Self {
        Morphism {
            dom: SpaceObject::unit(),
            cod: SpaceObject::unit(),
            data: vec![z],
        }
    }

    pub fn identity(obj: &SpaceObject) -> Self {
        Self::from_fn(
            obj.clone(),
            obj.clone(),
            |r, c| if r == c { ONE } else { ZERO },
        )
    }

    pub fn zero(dom: &SpaceObject, cod: &SpaceObject) -> Self {
        Morphism {
            dom: dom.clone(),
            cod: cod.clone(),
            data: vec![ZERO; dom.dim() * cod.dim()],
        }
    }

    pub fn dom(&self) -> &SpaceObject {
        &self.dom
    }

    pub fn cod(&self) -> &SpaceObject {
        &self.cod
    }

    pub fn rows(&self) -> usize {
        self.cod.dim()
    }

    pub fn cols(&self) -> usize {
        self.dom.dim()
    }

    pub fn entries(&self) -> &[Cplx] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> Cplx {
        self.data[r * self.cols() + c]
    }

    pub fn column(&self, c: usize) -> Vec<Cplx> {
        (0..self.rows()).map(|r| self.get(r, c)).collect()
    }

    /// The single entry of a scalar `I -> I` (or any 1x1 morphism).
    pub fn as_scalar(&self) -> Option<Cplx> {
        (self.data.len() == 1 && self.rows() == 1).then(|| self.data[0])
    }

    /// Re-tags domain and codomain without touching the entries.
    pub fn cast(&self, dom: &SpaceObject, cod: &SpaceObject) -> Result<Self> {
        if dom.dim() != self.cols() || cod.dim() != self.rows() {
            return Err(Error::InvariantViolation(format!(
                "cannot cast {}x{} matrix to {} -> {}",
                self.rows(),
                self.cols(),
                dom,
                cod
            )));
        }
        Ok(Morphism {
            dom: dom.clone(),
            cod: cod.clone(),
            data: self.data.clone(),
        })
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &Morphism) -> Result<Morphism> {
        compose(g, self)
    }

    pub fn tensor(&self, other: &Morphism) -> Morphism {
        tensor(self, other)
    }

    pub fn dagger(&self) -> Morphism {
        let (rows, cols) = (self.rows(), self.cols());
        let mut data = vec![ZERO; rows * cols];
        for r in 0..rows {
            for c in 0..cols {
                data[c * rows + r] = self.data[r * cols + c].conj();
            }
        }
        Morphism {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            data,
        }
    }

    /// The conjugation functor `(-)_*`: entrywise complex conjugation.
    pub fn conj(&self) -> Morphism {
        Morphism {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    /// The transpose `f*: B* -> A*` of `f: A -> B`.
    pub fn transpose_of(&self) -> Morphism {
        let t = self.conj().dagger();
        Morphism {
            dom: SpaceObject::dual(&self.cod),
            cod: SpaceObject::dual(&self.dom),
            data: t.data,
        }
    }

    /// The name `⌜f⌝: I -> B ⊗ A*` of `f: A -> B`. Under the row-major
    /// convention this is the entry array read as a column.
    pub fn name_of(&self) -> Morphism {
        Morphism {
            dom: SpaceObject::unit(),
            cod: SpaceObject::tensor(&self.cod, &SpaceObject::dual(&self.dom)),
            data: self.data.clone(),
        }
    }

    /// Inverse of [`Morphism::name_of`]: reads a state of `B ⊗ A*` as `A -> B`.
    pub fn unname(name: &Morphism, dom: &SpaceObject, cod: &SpaceObject) -> Result<Morphism> {
        require(
            "unname",
            &SpaceObject::tensor(cod, &SpaceObject::dual(dom)),
            name.cod(),
        )?;
        require("unname", &SpaceObject::unit(), name.dom())?;
        Ok(Morphism {
            dom: dom.clone(),
            cod: cod.clone(),
            data: name.data.clone(),
        })
    }

    pub fn scale(&self, s: Cplx) -> Morphism {
        Morphism {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Morphism {
        self.scale(Cplx::new(s, 0.0))
    }

    pub fn add(&self, other: &Morphism) -> Result<Morphism> {
        add(self, other)
    }

    pub fn sub(&self, other: &Morphism) -> Result<Morphism> {
        add(self, &other.scale_real(-1.0))
    }

    /// Maximum absolute entrywise difference; infinite for mismatched shapes.
    pub fn max_abs_diff(&self, other: &Morphism) -> f64 {
        if self.rows() != other.rows() || self.cols() != other.cols() {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Morphism, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    /// Squared norm of a state, or squared Frobenius norm in general.
    pub fn norm_sqr(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Zeroes every row whose flag is false.
    pub fn mask_rows(&self, keep: &[bool]) -> Morphism {
        assert_eq!(keep.len(), self.rows(), "row mask length");
        let cols = self.cols();
        let mut data = self.data.clone();
        for (r, &k) in keep.iter().enumerate() {
            if !k {
                data[r * cols..(r + 1) * cols].fill(ZERO);
            }
        }
        Morphism {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            data,
        }
    }

    /// Zeroes every column whose flag is false.
    pub fn mask_cols(&self, keep: &[bool]) -> Morphism {
        assert_eq!(keep.len(), self.cols(), "column mask length");
        let cols = self.cols();
        let mut data = self.data.clone();
        for (i, z) in data.iter_mut().enumerate() {
            if !keep[i % cols] {
                *z = ZERO;
            }
        }
        Morphism {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            data,
        }
    }

    /// Trace of an endomorphism.
    pub fn trace(&self) -> Cplx {
        let n = self.rows().min(self.cols());
        (0..n).map(|i| self.get(i, i)).sum()
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            rows: self.rows(),
            cols: self.cols(),
            data: self
                .data
                .iter()
                .map(|z| [JsonNumber::Value(z.re), JsonNumber::Value(z.im)])
                .collect(),
        }
    }

    /// Loads a matrix, typing dimension-1 sides as `I` and others as `C^n`.
    pub fn from_json(json: &MatrixJson) -> Result<Morphism> {
        let side = |d: usize| {
            if d == 1 {
                SpaceObject::unit()
            } else {
                SpaceObject::base(d)
            }
        };
        Self::from_json_typed(json, side(json.cols), side(json.rows))
    }

    pub fn from_json_typed(
        json: &MatrixJson,
        dom: SpaceObject,
        cod: SpaceObject,
    ) -> Result<Morphism> {
        if json.data.len() != json.rows * json.cols {
            return Err(Error::Parse(format!(
                "data has {} entries, expected rows*cols = {}",
                json.data.len(),
                json.rows * json.cols
            )));
        }
        if dom.dim() != json.cols || cod.dim() != json.rows {
            return Err(Error::Parse(format!(
                "{}x{} matrix cannot have type {} -> {}",
                json.rows, json.cols, dom, cod
            )));
        }
        let data = json
            .data
            .iter()
            .map(|[re, im]| Ok(Cplx::new(re.value()?, im.value()?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_entries(dom, cod, data)
    }
}

/// Wire format for matrices: `{"rows": r, "cols": c, "data": [[re, im], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[JsonNumber; 2]>,
}

/// A matrix component. Non-finite values cannot be JSON numbers, so they are
/// accepted as strings (`"NaN"`, `"inf"`) and rejected later as invariant
/// violations rather than parse errors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonNumber {
    Value(f64),
    Text(String),
}

impl JsonNumber {
    fn value(&self) -> Result<f64> {
        match self {
            JsonNumber::Value(v) => Ok(*v),
            JsonNumber::Text(s) => s
                .trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("not a number: {s:?}"))),
        }
    }
}

/// Dense product `a (r x k) * b (k x c)`, row-major, skipping zero entries of `a`.
pub(crate) fn matmul(a: &[Cplx], b: &[Cplx], r: usize, k: usize, c: usize) -> Vec<Cplx> {
    let mut out = vec![ZERO; r * c];
    par::fill_chunks(&mut out, c, r * k * c, |i, row| {
        for kk in 0..k {
            let x = a[i * k + kk];
            if x == ZERO {
                continue;
            }
            let brow = &b[kk * c..(kk + 1) * c];
            for (o, y) in row.iter_mut().zip(brow) {
                *o += x * y;
            }
        }
    });
    out
}

/// `g ∘ f`. Fails unless `cod(f)` and `dom(g)` have the same normal form.
pub fn compose(g: &Morphism, f: &Morphism) -> Result<Morphism> {
    require("compose", g.dom(), f.cod())?;
    let data = matmul(&g.data, &f.data, g.rows(), g.cols(), f.cols());
    Ok(Morphism::raw(f.dom.clone(), g.cod.clone(), data))
}

/// Composes a pipeline given in application order: `chain(&[f, g, h]) = h ∘ g ∘ f`.
pub fn chain(steps: &[&Morphism]) -> Result<Morphism> {
    let (first, rest) = steps
        .split_first()
        .ok_or_else(|| Error::InvariantViolation("empty composition chain".into()))?;
    rest.iter()
        .try_fold((*first).clone(), |acc, step| compose(step, &acc))
}

/// Kronecker product `f ⊗ g`.
pub fn tensor(f: &Morphism, g: &Morphism) -> Morphism {
    let (r1, c1, r2, c2) = (f.rows(), f.cols(), g.rows(), g.cols());
    let cols = c1 * c2;
    let mut data = vec![ZERO; r1 * r2 * cols];
    par::fill_chunks(&mut data, cols, r1 * r2 * cols, |row, out| {
        let (i, k) = (row / r2, row % r2);
        for j in 0..c1 {
            let x = f.data[i * c1 + j];
            if x == ZERO {
                continue;
            }
            let grow = &g.data[k * c2..(k + 1) * c2];
            for (l, y) in grow.iter().enumerate() {
                out[j * c2 + l] = x * y;
            }
        }
    });
    Morphism::raw(
        SpaceObject::tensor(&f.dom, &g.dom),
        SpaceObject::tensor(&f.cod, &g.cod),
        data,
    )
}

/// Left-nested tensor product of a non-empty list; the empty list gives `id_I`.
pub fn tensor_all(parts: &[Morphism]) -> Morphism {
    match parts.split_first() {
        None => Morphism::identity(&SpaceObject::unit()),
        Some((first, rest)) => rest.iter().fold(first.clone(), |acc, p| tensor(&acc, p)),
    }
}

/// `(f ⊗ g) ∘ m` without materialising `f ⊗ g`. Each column of `m` is
/// reshaped to a `dom(f) x dom(g)` block `X` and mapped to `f X gᵀ`.
pub fn compose_tensor(f: &Morphism, g: &Morphism, m: &Morphism) -> Result<Morphism> {
    require(
        "compose_tensor",
        &SpaceObject::tensor(f.dom(), g.dom()),
        m.cod(),
    )?;
    let (r1, c1, r2, c2) = (f.rows(), f.cols(), g.rows(), g.cols());
    let out_rows = r1 * r2;
    let cols = m.cols();
    let column_ids: Vec<usize> = (0..cols).collect();
    let columns = par::map(&column_ids, |&col| {
        // t = X gᵀ, shape c1 x r2
        let mut t = vec![ZERO; c1 * r2];
        for i in 0..c1 {
            for j in 0..c2 {
                let x = m.data[(i * c2 + j) * cols + col];
                if x == ZERO {
                    continue;
                }
                for l in 0..r2 {
                    let y = g.data[l * c2 + j];
                    if y != ZERO {
                        t[i * r2 + l] += x * y;
                    }
                }
            }
        }
        matmul(&f.data, &t, r1, c1, r2)
    });
    let mut data = vec![ZERO; out_rows * cols];
    for (col, values) in columns.into_iter().enumerate() {
        for (row, v) in values.into_iter().enumerate() {
            data[row * cols + col] = v;
        }
    }
    Ok(Morphism::raw(
        m.dom.clone(),
        SpaceObject::tensor(f.cod(), g.cod()),
        data,
    ))
}

pub fn add(f: &Morphism, g: &Morphism) -> Result<Morphism> {
    require("add", f.dom(), g.dom())?;
    require("add", f.cod(), g.cod())?;
    Ok(Morphism::raw(
        f.dom.clone(),
        f.cod.clone(),
        f.data.iter().zip(&g.data).map(|(a, b)| a + b).collect(),
    ))
}

/// Sum of a non-empty list of parallel morphisms.
pub fn sum(terms: &[Morphism]) -> Result<Morphism> {
    let (first, rest) = terms
        .split_first()
        .ok_or_else(|| Error::InvariantViolation("empty sum".into()))?;
    rest.iter().try_fold(first.clone(), |acc, t| add(&acc, t))
}

/// Block-diagonal `f ⊕ g`.
pub fn direct_sum(f: &Morphism, g: &Morphism) -> Morphism {
    direct_sum_all(&[f.clone(), g.clone()])
}

pub fn direct_sum_all(parts: &[Morphism]) -> Morphism {
    let dom = SpaceObject::biproduct(parts.iter().map(|p| p.dom.clone()).collect());
    let cod = SpaceObject::biproduct(parts.iter().map(|p| p.cod.clone()).collect());
    let cols = dom.dim();
    let mut data = vec![ZERO; cod.dim() * cols];
    let (mut r0, mut c0) = (0, 0);
    for p in parts {
        for r in 0..p.rows() {
            for c in 0..p.cols() {
                data[(r0 + r) * cols + c0 + c] = p.get(r, c);
            }
        }
        r0 += p.rows();
        c0 += p.cols();
    }
    Morphism::raw(dom, cod, data)
}

/// The symmetry `A ⊗ B -> B ⊗ A`.
pub fn swap(a: &SpaceObject, b: &SpaceObject) -> Morphism {
    let (da, db) = (a.dim(), b.dim());
    let dom = SpaceObject::tensor(a, b);
    let cod = SpaceObject::tensor(b, a);
    let n = da * db;
    let mut data = vec![ZERO; n * n];
    for i in 0..da {
        for j in 0..db {
            data[(j * da + i) * n + (i * db + j)] = ONE;
        }
    }
    Morphism::raw(dom, cod, data)
}

/// `swap_{A,B} ∘ m` computed as a row permutation.
pub fn swap_after(a: &SpaceObject, b: &SpaceObject, m: &Morphism) -> Result<Morphism> {
    require("swap_after", &SpaceObject::tensor(a, b), m.cod())?;
    let (da, db) = (a.dim(), b.dim());
    let cols = m.cols();
    let mut data = vec![ZERO; m.data.len()];
    for i in 0..da {
        for j in 0..db {
            let (src, dst) = (i * db + j, j * da + i);
            data[dst * cols..(dst + 1) * cols]
                .copy_from_slice(&m.data[src * cols..(src + 1) * cols]);
        }
    }
    Ok(Morphism::raw(
        m.dom.clone(),
        SpaceObject::tensor(b, a),
        data,
    ))
}

/// Canonical injection of part `n` into the biproduct of `parts`.
pub fn injection(parts: &[SpaceObject], n: usize) -> Result<Morphism> {
    if n >= parts.len() {
        return Err(Error::IndexOutOfRange {
            index: n,
            len: parts.len(),
        });
    }
    let offset: usize = parts[..n].iter().map(SpaceObject::dim).sum();
    let dom = parts[n].clone();
    let cod = SpaceObject::biproduct(parts.to_vec());
    Ok(Morphism::from_fn(dom, cod, |r, c| {
        if r == offset + c {
            ONE
        } else {
            ZERO
        }
    }))
}

/// Canonical projection onto part `n`; the dagger of the injection.
pub fn projection(parts: &[SpaceObject], n: usize) -> Result<Morphism> {
    injection(parts, n).map(|i| i.dagger())
}

/// Diagonal `Δ: A -> A ⊕ A`.
pub fn diagonal(a: &SpaceObject) -> Morphism {
    let parts = [a.clone(), a.clone()];
    let i0 = injection(&parts, 0).expect("two parts");
    let i1 = injection(&parts, 1).expect("two parts");
    add(&i0, &i1).expect("parallel injections")
}

/// Codiagonal `∇: A ⊕ A -> A`.
pub fn codiagonal(a: &SpaceObject) -> Morphism {
    diagonal(a).dagger()
}

/// Unit `ζ: I -> A ⊗ A*` and counit `θ: A* ⊗ A -> I` of the duality on `A`.
pub fn duality_pair(a: &SpaceObject) -> (Morphism, Morphism) {
    let d = a.dim();
    let a_star = SpaceObject::dual(a);
    let id: Vec<Cplx> = (0..d * d)
        .map(|k| if k / d == k % d { ONE } else { ZERO })
        .collect();
    let zeta = Morphism::raw(
        SpaceObject::unit(),
        SpaceObject::tensor(a, &a_star),
        id.clone(),
    );
    let theta = Morphism::raw(SpaceObject::tensor(&a_star, a), SpaceObject::unit(), id);
    (zeta, theta)
}
