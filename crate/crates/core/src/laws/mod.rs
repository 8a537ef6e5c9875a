//! Executable law suite.
//!
//! Every identity of the construction has one [`LawId`]. A check evaluates
//! both sides of its identities, restricts them to the sectors on which the
//! truncated model claims exactness, and records the max-abs deviation in a
//! [`LawReport`].

mod checks;
pub mod random;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::fock::LadderCoefficients;
use crate::par;
use crate::DEFAULT_TOLERANCE;

pub use checks::*;

macro_rules! laws {
    ($($variant:ident => $id:literal, $restriction:expr, $statement:literal;)*) => {
        /// Identifier of a single law.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum LawId {
            $($variant,)*
        }

        impl LawId {
            pub const ALL: &'static [LawId] = &[$(LawId::$variant,)*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(LawId::$variant => $id,)*
                }
            }

            /// The identity being checked.
            pub fn statement(self) -> &'static str {
                match self {
                    $(LawId::$variant => $statement,)*
                }
            }

            /// Where the identity is claimed to hold exactly.
            pub fn restriction(self) -> Restriction {
                match self {
                    $(LawId::$variant => $restriction,)*
                }
            }
        }
    };
}

/// Subspace on which a law is asserted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Restriction {
    Everywhere,
    /// Inputs of total particle number at most the cutoff.
    InputDegreeAtMostCutoff,
    /// Outputs of total particle number at most the cutoff.
    OutputDegreeAtMostCutoff,
    /// Input sectors `0..N-1`.
    InputBelowCutoff,
    /// Input sectors `0..N-2`.
    InputBelowCutoffMinusOne,
    /// Output sectors `0..N-1`, with sector `N` required to vanish.
    OutputBelowCutoff,
}

impl Restriction {
    pub fn describe(self) -> &'static str {
        match self {
            Restriction::Everywhere => "all sectors",
            Restriction::InputDegreeAtMostCutoff => "input total degree <= N",
            Restriction::OutputDegreeAtMostCutoff => "output total degree <= N",
            Restriction::InputBelowCutoff => "input sectors <= N-1",
            Restriction::InputBelowCutoffMinusOne => "input sectors <= N-2",
            Restriction::OutputBelowCutoff => "output sectors <= N-1; sector N vanishes",
        }
    }
}

laws! {
    LinalgBilinearity => "linalg.bilinearity", Restriction::Everywhere,
        "g(f + f') = gf + gf', (g + g')f = gf + g'f and (st)f = s(tf)";
    LinalgInterchange => "linalg.interchange", Restriction::Everywhere,
        "(f ⊗ g)(h ⊗ k) = fh ⊗ gk";
    LinalgScalars => "linalg.scalars_commute", Restriction::Everywhere,
        "st = ts for scalars s, t: I -> I";
    LinalgBiproduct => "linalg.dagger_biproduct", Restriction::Everywhere,
        "π_n = i_n†, π_m i_n = δ_mn, Σ i_n π_n = id and f + g = ∇(f ⊕ g)Δ";
    LinalgSwap => "linalg.swap", Restriction::Everywhere,
        "swap_BA swap_AB = id and swap (f ⊗ g) = (g ⊗ f) swap";
    LinalgSnake => "linalg.snake", Restriction::Everywhere,
        "(id ⊗ θ)(ζ ⊗ id) = id, (θ ⊗ id)(id ⊗ ζ) = id and θ ζ' = dim";
    LinalgNames => "linalg.names", Restriction::Everywhere,
        "(id ⊗ θ ⊗ id)(⌜k⌝ ⊗ ⌜h⌝) = ⌜kh⌝ and (h*)* = h";
    SymDimension => "sym.dimension", Restriction::Everywhere,
        "dim S_n(C^d) = binom(d+n-1, n)";
    SymCoisometry => "sym.coisometry", Restriction::Everywhere,
        "s s† = id on S_n(A)";
    SymAverage => "sym.symmetrizer_average", Restriction::Everywhere,
        "s†s = (1/n!) Σ_π U_π";
    SymNaturality => "sym.naturality", Restriction::Everywhere,
        "f^{⊗n} s†s = s†s f^{⊗n} and U_π s†s = s†s";
    SymFunctoriality => "sym.functoriality", Restriction::Everywhere,
        "S_n(gf) = S_n(g) S_n(f) and S_n(id) = id";
    FockFunctoriality => "fock.functoriality", Restriction::Everywhere,
        "F(gf) = F(g)F(f), F(id) = id and F(f†) = F(f)†";
    FockOrthonormality => "fock.orthonormality", Restriction::Everywhere,
        "ε ε† = id, e e† = 1 and e ε† = 0";
    FockComonoid => "fock.comonoid", Restriction::Everywhere,
        "(F(A), d, e) is coassociative, counital and cocommutative";
    FockBialgebra => "fock.bialgebra", Restriction::InputDegreeAtMostCutoff,
        "d d† = (d† ⊗ d†)(id ⊗ swap ⊗ id)(d ⊗ d), e d† = e ⊗ e, d e† = e† ⊗ e†, e e† = 1";
    FockAdditivity => "fock.additivity", Restriction::Everywhere,
        "F(f + g) = d†(F(f) ⊗ F(g))d";
    FockSingleParticleSplit => "fock.single_particle_split", Restriction::Everywhere,
        "ε d† = ε ⊗ e + e ⊗ ε";
    KUnitarity => "k.unitarity", Restriction::OutputDegreeAtMostCutoff,
        "k†k = id on F(A ⊕ B) and k k† = id on total degree <= N";
    KComultiplication => "k.comultiplication", Restriction::Everywhere,
        "d_A = k_{A,A} F(Δ_A)";
    KCounit => "k.counit", Restriction::Everywhere,
        "e_A = k_0 F(0_{A,0})";
    KProducts => "k.product_preservation", Restriction::Everywhere,
        "ε_{A⊕B} k† = i_A ε_A ⊗ e_B + e_A ⊗ i_B ε_B, F(π_A) = (id ⊗ e_B)k and F(π_B) = (e_A ⊗ id)k";
    CcrMixed => "ccr.mixed", Restriction::InputBelowCutoff,
        "a_φ a†_ψ - a†_ψ a_φ = <φ,ψ> id";
    CcrRaising => "ccr.raising", Restriction::InputBelowCutoffMinusOne,
        "a†_φ a†_ψ = a†_ψ a†_φ";
    CcrLowering => "ccr.lowering", Restriction::Everywhere,
        "a_φ a_ψ = a_ψ a_φ";
    CoherentCopy => "coherent.copy", Restriction::OutputDegreeAtMostCutoff,
        "d Coh(φ) = Coh(φ) ⊗ Coh(φ)";
    CoherentDelete => "coherent.delete", Restriction::Everywhere,
        "e Coh(φ) = 1";
    CoherentEigenstate => "coherent.eigenstate", Restriction::OutputBelowCutoff,
        "a_ψ Coh(φ) = <ψ,φ> Coh(φ)";
    CoherentNorm => "coherent.norm", Restriction::Everywhere,
        "|Coh(φ)|² = Σ_{n<=N} |φ|^{2n}/n!";
    AdjunctionCounitTriangle => "adjunction.counit_triangle", Restriction::Everywhere,
        "ε Rη = id for a commutative comonoid";
    AdjunctionUnitTriangle => "adjunction.unit_triangle", Restriction::Everywhere,
        "F(ε_A) Rη_{Q(A)} = id on F(A)";
    AdjunctionEtaComonoidMorphism => "adjunction.eta_comonoid_morphism", Restriction::OutputDegreeAtMostCutoff,
        "d Rη = (Rη ⊗ Rη) g and e Rη = u";
    ExpAdditive => "exp.additive", Restriction::Everywhere,
        "g(exp φ ⊗ exp ψ) = exp(φ + ψ)";
    ExpZero => "exp.zero", Restriction::Everywhere,
        "exp(0) = u";
    ExpNaturality => "exp.naturality", Restriction::Everywhere,
        "exp(m φ) = m exp(φ) for a monoid morphism m";
    ExpCoherent => "exp.coherent_state", Restriction::Everywhere,
        "Coh(φ) = exp_{(F(A), d†, e†)}(ε† φ)";
    ExpRaising => "exp.raising", Restriction::Everywhere,
        "Coh(φ) = exp(a†_φ) e†";
    EmbedMultiplication => "embed.multiplication", Restriction::Everywhere,
        "m g = (id ⊗ θ ⊗ id)(m ⊗ m)";
    EmbedUnit => "embed.unit", Restriction::Everywhere,
        "m s = ζ";
    EmbedRetraction => "embed.retraction", Restriction::Everywhere,
        "(id ⊗ s*) m = id";
}

impl fmt::Display for LawId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LawId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LawId::ALL
            .iter()
            .copied()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| format!("unknown law id {s:?}"))
    }
}

impl Serialize for LawId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for LawId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Outcome of one law on one instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LawReport {
    pub law_id: LawId,
    pub instance: String,
    /// `null` in JSON when the check could not be evaluated.
    #[serde(with = "deviation")]
    pub max_abs_deviation: f64,
    pub sector_restriction: String,
    pub passed: bool,
    #[serde(skip)]
    pub elapsed: Duration,
}

mod deviation {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
    }
}

impl LawReport {
    pub fn new(law_id: LawId, instance: impl Into<String>, deviation: f64, tolerance: f64) -> Self {
        LawReport {
            law_id,
            instance: instance.into(),
            max_abs_deviation: deviation,
            sector_restriction: law_id.restriction().describe().to_string(),
            // NaN compares false, so a broken evaluation never passes
            passed: deviation <= tolerance,
            elapsed: Duration::ZERO,
        }
    }
}

/// Tolerance, sample count and random source shared by the checks of one task.
pub struct CheckContext {
    pub tolerance: f64,
    pub samples: usize,
    pub rng: rand_chacha::ChaCha8Rng,
    pub coefficients: LadderCoefficients,
}

impl CheckContext {
    pub fn new(seed: u64, label: &str) -> Self {
        CheckContext {
            tolerance: DEFAULT_TOLERANCE,
            samples: 5,
            rng: random::task_rng(seed, label),
            coefficients: LadderCoefficients::standard(),
        }
    }

    pub fn report(&self, law: LawId, instance: &str, deviation: crate::Result<f64>) -> LawReport {
        let dev = deviation.unwrap_or(f64::INFINITY);
        LawReport::new(law, instance, dev, self.tolerance)
    }
}

/// Parameters of [`run_suite`].
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub dims: Vec<usize>,
    pub cutoffs: Vec<usize>,
    pub seed: u64,
    pub samples: usize,
    pub tolerance: f64,
    pub coefficients: LadderCoefficients,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            dims: vec![1, 2, 3],
            cutoffs: vec![2, 3, 4],
            seed: 42,
            samples: 5,
            tolerance: DEFAULT_TOLERANCE,
            coefficients: LadderCoefficients::standard(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Task {
    Linalg(usize),
    Sym(usize, usize),
    Fock(usize, usize),
    K(usize, usize),
    Ccr(usize, usize),
    Coherent(usize, usize),
    Adjunction(usize, usize),
    Exponentials(usize, usize),
    Embedding,
}

impl Task {
    fn label(self) -> String {
        format!("{self:?}")
    }
}

fn tasks(config: &SuiteConfig) -> Vec<Task> {
    let mut out = vec![Task::Embedding];
    for &d in &config.dims {
        out.push(Task::Linalg(d));
        for &n in &config.cutoffs {
            out.extend([
                Task::Sym(d, n),
                Task::Fock(d, n),
                Task::K(d, n),
                Task::Ccr(d, n),
                Task::Coherent(d, n),
                Task::Adjunction(d, n),
                Task::Exponentials(d, n),
            ]);
        }
    }
    out
}

fn run_task(config: &SuiteConfig, task: Task) -> Vec<LawReport> {
    let mut ctx = CheckContext::new(config.seed, &task.label());
    ctx.tolerance = config.tolerance;
    ctx.samples = config.samples;
    ctx.coefficients = config.coefficients.clone();
    let start = Instant::now();
    let mut reports = match task {
        Task::Linalg(d) => check_linalg(&mut ctx, d),
        Task::Sym(d, n) => check_symtensor(&mut ctx, d, n),
        Task::Fock(d, n) => check_fock(&mut ctx, d, n),
        Task::K(d, n) => check_k(&mut ctx, d, n),
        Task::Ccr(d, n) => check_ccr_grid(&mut ctx, d, n),
        Task::Coherent(d, n) => check_coherent_grid(&mut ctx, d, n),
        Task::Adjunction(d, n) => check_adjunction_grid(&mut ctx, d, n),
        Task::Exponentials(d, n) => check_exponentials_grid(&mut ctx, d, n),
        Task::Embedding => check_embedding_standard(&mut ctx),
    };
    let elapsed = start.elapsed();
    for r in &mut reports {
        r.elapsed = elapsed;
    }
    reports
}

/// Runs every check over the configured grid. The result is sorted by law
/// id and instance and depends only on the configuration.
pub fn run_suite(config: &SuiteConfig) -> Vec<LawReport> {
    let all = tasks(config);
    let mut reports: Vec<LawReport> = par::map(&all, |&t| run_task(config, t))
        .into_iter()
        .flatten()
        .collect();
    reports.sort_by(|a, b| (a.law_id.as_str(), &a.instance).cmp(&(b.law_id.as_str(), &b.instance)));
    reports
}

/// Pretty-printed JSON array of reports.
pub fn report_json(reports: &[LawReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialise")
}

pub fn all_passed(reports: &[LawReport]) -> bool {
    reports.iter().all(|r| r.passed)
}
