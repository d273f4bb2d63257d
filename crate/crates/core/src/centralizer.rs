//! Commutants and intertwiners by brute-force linear algebra, verification of
//! the Brauer algebra isomorphism onto the `osp` commutant, and decomposition
//! of equivariant maps in the diagram basis.
//!
//! An endomorphism `f` commutes with the action when `f·ρ(X) = ρ(X)·f` for
//! every generator `X`. Generators acting diagonally on basis tensors force
//! `f_ab = 0` unless `a` and `b` have the same diagonal eigenvalues, which
//! prunes the unknowns before elimination.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::diagram::{double_factorial_odd, enumerate_brauer, GeneralizedDiagram};
use crate::error::{Error, Result};
use crate::linalg::{nullspace_basis, random_primes, rank, rank_two_primes, SparseMatrix, SparseVector};
use crate::oriented::{psi_embed, Orientation, OrientationSeq, OrientedMorphism};
use crate::scalar::{self, Scalar};
use crate::superalgebra::{gl_embedding, osp_basis, BasisIndex, Mode, Params};
use crate::tensor::{lie_operator, theta, weight, LabelledOrientedDiagram, SparseOperator, TensorSpace};

/// Above this many basis tensors, `Auto` switches to modular ranks.
pub const EXACT_THRESHOLD: usize = 500;

/// Default cap on `dim V^{⊗d}`.
pub const DEFAULT_BUDGET: usize = 4096;

pub const DEFAULT_SEED: u64 = 0x5eed_b2a0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankStrategy {
    Auto,
    Exact,
    TwoPrimes,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub strategy: RankStrategy,
    pub seed: u64,
    pub budget: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { strategy: RankStrategy::Auto, seed: DEFAULT_SEED, budget: DEFAULT_BUDGET }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutantBasis {
    pub elements: Vec<SparseOperator>,
}

impl CommutantBasis {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }
}

/// The linear system for maps `f : W_cols → W_rows` with `f·G_c = G_r·f` for
/// every generator pair `(G_r, G_c)`.
struct IntertwinerSystem {
    shape: (usize, usize),
    unknowns: Vec<(usize, usize)>,
    equations: Vec<SparseVector>,
}

type GeneratorPair<'a> = (&'a SparseMatrix, &'a SparseMatrix);

impl IntertwinerSystem {
    fn build(generators: &[GeneratorPair], rows: &[usize], cols: &[usize]) -> Self {
        let shape = generators.first().map_or((0, 0), |(r, c)| (r.rows(), c.rows()));
        let (diagonal, general): (Vec<GeneratorPair>, Vec<GeneratorPair>) =
            generators.iter().partition(|(r, c)| r.is_diagonal() && c.is_diagonal());
        let eigen = |g: &dyn Fn(GeneratorPair) -> &SparseMatrix, a: usize| -> Vec<Scalar> {
            diagonal.iter().map(|&pair| g(pair).get(a, a)).collect()
        };
        let mut by_eigen: HashMap<Vec<Scalar>, Vec<usize>> = HashMap::new();
        for &b in cols {
            by_eigen.entry(eigen(&|p| p.1, b)).or_default().push(b);
        }
        let mut unknowns = Vec::new();
        for &a in rows {
            if let Some(bs) = by_eigen.get(&eigen(&|p| p.0, a)) {
                unknowns.extend(bs.iter().map(|&b| (a, b)));
            }
        }
        let position: HashMap<(usize, usize), usize> = unknowns.iter().enumerate().map(|(k, &u)| (u, k)).collect();

        let mut equations: Vec<SparseVector> = Vec::new();
        for (g_rows, g_cols) in general {
            let gt = g_rows.transpose();
            let mut row_of: HashMap<(usize, usize), usize> = HashMap::new();
            let mut local: Vec<SparseVector> = Vec::new();
            let mut push = |key: (usize, usize), var: usize, value: Scalar| {
                let r = *row_of.entry(key).or_insert_with(|| {
                    local.push(SparseVector::new());
                    local.len() - 1
                });
                let slot = local[r].entry(var).or_insert_with(Scalar::zero);
                *slot += value;
            };
            for (&(a, b), &var) in &position {
                for (&c, v) in g_cols.row(b) {
                    push((a, c), var, v.clone());
                }
                for (&r, v) in gt.row(a) {
                    push((r, b), var, -v.clone());
                }
            }
            for mut eq in local {
                eq.retain(|_, v| !v.is_zero());
                if !eq.is_empty() {
                    equations.push(eq);
                }
            }
        }
        Self { shape, unknowns, equations }
    }

    fn matrix(&self, keep: impl Fn(usize) -> bool) -> (SparseMatrix, Vec<usize>) {
        let vars: Vec<usize> = (0..self.unknowns.len()).filter(|&k| keep(k)).collect();
        let local: HashMap<usize, usize> = vars.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let rows: Vec<SparseVector> = self
            .equations
            .iter()
            .filter(|eq| eq.keys().next().is_some_and(|k| local.contains_key(k)))
            .map(|eq| eq.iter().filter_map(|(k, v)| local.get(k).map(|&i| (i, v.clone()))).collect())
            .collect();
        (SparseMatrix::from_rows(vars.len(), rows), vars)
    }

    fn to_operator(&self, vars: &[usize], x: &SparseVector, in_len: usize, out_len: usize) -> SparseOperator {
        let mut m = SparseMatrix::new(self.shape.0, self.shape.1);
        for (&i, v) in x {
            let (a, b) = self.unknowns[vars[i]];
            m.set(a, b, v.clone());
        }
        SparseOperator { in_len, out_len, matrix: m }
    }
}

fn square_pairs(ops: &[SparseOperator]) -> Vec<GeneratorPair<'_>> {
    ops.iter().map(|g| (&g.matrix, &g.matrix)).collect()
}

/// Rank of `m` by the chosen method; `Some(primes)` if modular ranks were used.
fn rank_by(m: &SparseMatrix, exact: bool, primes: [u64; 2]) -> Result<usize> {
    if exact {
        return Ok(rank(m));
    }
    match rank_two_primes(m, primes)? {
        Some(r) => Ok(r),
        None => Ok(rank(m)),
    }
}

/// Basis of all `f` with `f·G = G·f` for every generator.
pub fn commutant(generators: &[SparseOperator]) -> Result<CommutantBasis> {
    let Some(first) = generators.first() else {
        return Err(Error::DimensionMismatch("no generators given".into()));
    };
    let size = first.matrix.rows();
    for g in generators {
        if g.matrix.rows() != size || g.matrix.cols() != size {
            return Err(Error::DimensionMismatch("generators must be square of equal size".into()));
        }
    }
    let all: Vec<usize> = (0..size).collect();
    let system = IntertwinerSystem::build(&square_pairs(generators), &all, &all);
    let (m, vars) = system.matrix(|_| true);
    let elements =
        nullspace_basis(&m).iter().map(|x| system.to_operator(&vars, x, first.in_len, first.out_len)).collect();
    Ok(CommutantBasis { elements })
}

fn check_budget(space: &TensorSpace, d: usize, opts: &VerifyOptions) -> Result<usize> {
    let size = space.dim().checked_pow(d as u32).unwrap_or(usize::MAX);
    if size > opts.budget {
        return Err(Error::BudgetExceeded(format!("dim V^(x){d} = {size} exceeds the budget {}", opts.budget)));
    }
    Ok(size)
}

fn osp_operators(space: &TensorSpace, d: usize) -> Result<Vec<SparseOperator>> {
    osp_basis(&space.params).iter().map(|x| lie_operator(x, space, d)).collect()
}

fn gl_operators(space: &TensorSpace, d: usize) -> Result<Vec<SparseOperator>> {
    gl_embedding(&space.params).iter().map(|x| lie_operator(x, space, d)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParitySplit {
    pub even: usize,
    pub odd: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutantDimension {
    pub dim: usize,
    pub parity_split: ParitySplit,
    /// Primes used for modular ranks, or `None` for exact arithmetic.
    pub primes: Option<[u64; 2]>,
}

fn use_exact(size: usize, opts: &VerifyOptions) -> bool {
    match opts.strategy {
        RankStrategy::Exact => true,
        RankStrategy::TwoPrimes => false,
        RankStrategy::Auto => size <= EXACT_THRESHOLD,
    }
}

/// `dim End_osp(V^{⊗d})`, split by the parity of the endomorphisms.
pub fn osp_commutant_dim(p: &Params, d: usize, opts: &VerifyOptions) -> Result<CommutantDimension> {
    let space = TensorSpace::new(*p);
    let size = check_budget(&space, d, opts)?;
    let ops = osp_operators(&space, d)?;
    let all: Vec<usize> = (0..size).collect();
    let system = IntertwinerSystem::build(&square_pairs(&ops), &all, &all);
    let exact = use_exact(size, opts);
    let primes = random_primes(opts.seed);
    let mut split = [0usize; 2];
    for (parity, slot) in split.iter_mut().enumerate() {
        let (m, vars) = system.matrix(|k| {
            let (a, b) = system.unknowns[k];
            (space.tensor_parity(a, d) + space.tensor_parity(b, d)) % 2 == parity
        });
        *slot = vars.len() - rank_by(&m, exact, primes)?;
    }
    Ok(CommutantDimension {
        dim: split[0] + split[1],
        parity_split: ParitySplit { even: split[0], odd: split[1] },
        primes: (!exact).then_some(primes),
    })
}

/// Exact basis of `End_osp(V^{⊗d})`, even elements first.
pub fn osp_commutant_basis(p: &Params, d: usize, opts: &VerifyOptions) -> Result<CommutantBasis> {
    let space = TensorSpace::new(*p);
    let size = check_budget(&space, d, opts)?;
    let ops = osp_operators(&space, d)?;
    let all: Vec<usize> = (0..size).collect();
    let system = IntertwinerSystem::build(&square_pairs(&ops), &all, &all);
    let mut elements = Vec::new();
    for parity in 0..2 {
        let (m, vars) = system.matrix(|k| {
            let (a, b) = system.unknowns[k];
            (space.tensor_parity(a, d) + space.tensor_parity(b, d)) % 2 == parity
        });
        elements.extend(nullspace_basis(&m).iter().map(|x| system.to_operator(&vars, x, d, d)));
    }
    Ok(CommutantBasis { elements })
}

/// `dim Hom_gl(m|n)(W_s, W_t)`, computed exactly.
pub fn gl_intertwiner_dim(s: &OrientationSeq, t: &OrientationSeq, p: &Params) -> Result<usize> {
    if p.mode == Mode::Even && (s.has_circle() || t.has_circle()) {
        return Err(Error::ModeMismatch("o has no summand in even mode".into()));
    }
    let space = TensorSpace::new(*p);
    let opts = VerifyOptions::default();
    check_budget(&space, s.len().max(t.len()), &opts)?;
    let source = gl_operators(&space, s.len())?;
    let target = gl_operators(&space, t.len())?;
    let pairs: Vec<GeneratorPair> = target.iter().zip(&source).map(|(r, c)| (&r.matrix, &c.matrix)).collect();
    let rows: Vec<usize> = (0..space.size(t.len())).filter(|&a| space.summand(a, t.len()) == *t).collect();
    let cols: Vec<usize> = (0..space.size(s.len())).filter(|&b| space.summand(b, s.len()) == *s).collect();
    if rows.is_empty() || cols.is_empty() {
        return Ok(0);
    }
    let system = IntertwinerSystem::build(&pairs, &rows, &cols);
    let (m, vars) = system.matrix(|_| true);
    Ok(vars.len() - rank(&m))
}

/// `Θ(Ψ(b))` for every `b ∈ B[d]`, in enumeration order.
pub fn brauer_image(p: &Params, d: usize) -> Result<Vec<(GeneralizedDiagram, SparseOperator)>> {
    let space = TensorSpace::new(*p);
    enumerate_brauer(d)?
        .into_iter()
        .map(|b| {
            let op = theta(&psi_embed(&b, p.mode)?, &space)?;
            Ok((b, op))
        })
        .collect()
}

/// Rank of `{Θ(Ψ(b)) : b ∈ B[d]}` over the rationals.
pub fn brauer_action_rank(p: &Params, d: usize, opts: &VerifyOptions) -> Result<usize> {
    let space = TensorSpace::new(*p);
    let size = check_budget(&space, d, opts)?;
    let image = brauer_image(p, d)?;
    Ok(rank(&flatten_operators(image.iter().map(|(_, op)| op), size * size)))
}

fn flatten_operators<'a>(ops: impl Iterator<Item = &'a SparseOperator>, cols: usize) -> SparseMatrix {
    SparseMatrix::from_rows(cols, ops.map(|op| op.matrix.flatten()).collect())
}

/// Whether the parameters lie in the range where the map onto the commutant is an isomorphism:
/// `sdim V ≠ 2m|0` and `d ≤ m+n`, or `sdim V = 2m|0` with `m > 0` and `d < m`.
pub fn hypotheses_satisfied(p: &Params, d: usize) -> bool {
    let purely_even = p.mode == Mode::Even && p.n == 0;
    if purely_even {
        p.m > 0 && d < p.m
    } else {
        d <= p.m + p.n
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub m: usize,
    pub n: usize,
    pub mode: Mode,
    pub d: usize,
    pub delta: String,
    pub brauer_dim: usize,
    pub image_rank: usize,
    pub commutant_dim: usize,
    pub injective: bool,
    pub surjective: bool,
    pub iso: bool,
    pub hypotheses_satisfied: bool,
    pub parity_split: ParitySplit,
    pub image_in_commutant: bool,
    pub exact: bool,
    pub seed: u64,
    pub primes: Option<[u64; 2]>,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Compares the image of `Br_d(δ)` with the `osp` commutant of `V^{⊗d}`.
pub fn verify_isomorphism(p: &Params, d: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    let space = TensorSpace::new(*p);
    let size = check_budget(&space, d, opts)?;
    let image = brauer_image(p, d)?;
    let image_rank = rank(&flatten_operators(image.iter().map(|(_, op)| op), size * size));
    let osp = osp_operators(&space, d)?;
    let image_in_commutant = image.iter().all(|(_, op)| osp.iter().all(|x| op.commutes_with(x)));
    let commutant = osp_commutant_dim(p, d, opts)?;

    let brauer_dim = double_factorial_odd(d);
    let injective = image_rank == brauer_dim;
    let surjective = image_in_commutant && image_rank == commutant.dim;
    let exact = commutant.primes.is_none();
    Ok(VerificationReport {
        m: p.m,
        n: p.n,
        mode: p.mode,
        d,
        delta: scalar::format(&p.delta()),
        brauer_dim,
        image_rank,
        commutant_dim: commutant.dim,
        injective,
        surjective,
        iso: injective && surjective && brauer_dim == commutant.dim,
        hypotheses_satisfied: hypotheses_satisfied(p, d),
        parity_split: commutant.parity_split,
        image_in_commutant,
        exact,
        seed: opts.seed,
        primes: commutant.primes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub coefficients: BTreeMap<GeneralizedDiagram, Scalar>,
    pub residual: SparseOperator,
}

impl Decomposition {
    pub fn residual_is_zero(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Labels every strand of `b` with its own absolute value `1, 2, ...`, with
/// through strands oriented `^` and horizontal strands `^` on the left.
fn distinguishing_labelling(b: &GeneralizedDiagram) -> LabelledOrientedDiagram {
    let d = b.d();
    let mut orient = vec![Orientation::Up; 2 * d];
    let mut abs = vec![0usize; 2 * d];
    for (k, (x, y)) in b.pair_indices().enumerate() {
        abs[x] = k + 1;
        abs[y] = k + 1;
        if (x < d) == (y < d) {
            orient[x.max(y)] = Orientation::Down;
        }
    }
    let label = |i: usize| match orient[i] {
        Orientation::Up => BasisIndex::Plain(abs[i]),
        _ => BasisIndex::Barred(abs[i]),
    };
    let top = OrientationSeq(orient[..d].to_vec());
    let bottom = OrientationSeq(orient[d..].to_vec());
    LabelledOrientedDiagram {
        morphism: OrientedMorphism { top, diagram: b.clone(), bottom },
        bottom_labels: (d..2 * d).map(label).collect(),
        top_labels: (0..d).map(label).collect(),
    }
}

/// Writes an `osp`-equivariant `f` as `Σ γ_b Θ(Ψ(b))`, treating diagrams with
/// more through strands first and reading each `γ_b` off the matrix entry of a
/// labelling that gives every strand its own absolute value.
pub fn decompose_in_brauer_basis(f: &SparseOperator, p: &Params, d: usize) -> Result<Decomposition> {
    let space = TensorSpace::new(*p);
    let size = check_budget(&space, d, &VerifyOptions::default())?;
    if f.in_len != d || f.out_len != d || f.matrix.rows() != size || f.matrix.cols() != size {
        return Err(Error::DimensionMismatch(format!("operator is not an endomorphism of V^(x){d}")));
    }
    for x in osp_operators(&space, d)? {
        if !f.commutes_with(&x) {
            return Err(Error::NonEquivariant("osp".into()));
        }
    }
    if d > p.m + p.n {
        return Err(Error::AmbiguousReadOff(format!(
            "d = {d} strands need distinct labels but only m + n = {} absolute values exist",
            p.m + p.n
        )));
    }
    let mut diagrams = enumerate_brauer(d)?;
    diagrams.sort_by_key(|b| std::cmp::Reverse(b.vertical_strands()));
    let mut residual = f.clone();
    let mut coefficients = BTreeMap::new();
    for b in diagrams {
        let ld = distinguishing_labelling(&b);
        let wt = weight(&ld, p)?;
        debug_assert!(wt != 0);
        let entry = residual.get(&space, &ld.top_labels, &ld.bottom_labels)?;
        if entry.is_zero() {
            continue;
        }
        let gamma = entry / scalar::int(wt);
        let image = theta(&psi_embed(&b, p.mode)?, &space)?;
        residual = residual.sub(&image.scale(&gamma))?;
        coefficients.insert(b, gamma);
    }
    Ok(Decomposition { coefficients, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::evaluate_word;
    use crate::oriented::psi_element;
    use crate::scalar::int;

    fn params(m: usize, n: usize, mode: Mode) -> Params {
        Params::new(m, n, mode)
    }

    #[test]
    fn full_matrix_algebra_has_scalar_commutant() {
        let mut gens = Vec::new();
        for r in 0..3 {
            for c in 0..3 {
                let mut m = SparseMatrix::new(3, 3);
                m.set(r, c, int(1));
                gens.push(SparseOperator { in_len: 1, out_len: 1, matrix: m });
            }
        }
        let basis = commutant(&gens).unwrap();
        assert_eq!(basis.dim(), 1);
        assert_eq!(basis.elements[0].matrix.nnz(), 3);
        assert!(basis.elements[0].matrix.is_diagonal());
        assert!(commutant(&[]).is_err());
    }

    #[test]
    fn commutant_examples() {
        let opts = VerifyOptions::default();
        assert_eq!(osp_commutant_dim(&params(0, 1, Mode::Even), 1, &opts).unwrap().dim, 1);
        assert_eq!(osp_commutant_dim(&params(2, 0, Mode::Even), 2, &opts).unwrap().dim, 4);
        assert_eq!(osp_commutant_dim(&params(1, 1, Mode::Even), 2, &opts).unwrap().dim, 3);
        assert_eq!(osp_commutant_dim(&params(1, 1, Mode::Odd), 2, &opts).unwrap().dim, 3);
    }

    #[test]
    fn modular_and_exact_ranks_agree() {
        let exact = VerifyOptions { strategy: RankStrategy::Exact, ..Default::default() };
        let modular = VerifyOptions { strategy: RankStrategy::TwoPrimes, ..Default::default() };
        for (m, n, mode, d) in [(1, 1, Mode::Odd, 2), (2, 0, Mode::Even, 2), (0, 1, Mode::Even, 2)] {
            let p = params(m, n, mode);
            let a = osp_commutant_dim(&p, d, &exact).unwrap();
            let b = osp_commutant_dim(&p, d, &modular).unwrap();
            assert_eq!((a.dim, a.parity_split), (b.dim, b.parity_split));
            assert!(a.primes.is_none() && b.primes.is_some());
            assert_eq!(osp_commutant_basis(&p, d, &exact).unwrap().dim(), a.dim);
        }
    }

    #[test]
    fn commutant_basis_commutes() {
        let p = params(1, 1, Mode::Odd);
        let sp = TensorSpace::new(p);
        let basis = osp_commutant_basis(&p, 2, &VerifyOptions::default()).unwrap();
        let ops = osp_operators(&sp, 2).unwrap();
        for f in &basis.elements {
            assert!(ops.iter().all(|x| f.commutes_with(x)));
        }
    }

    #[test]
    fn gl_intertwiner_examples() {
        let p = params(1, 1, Mode::Odd);
        let seq = |s: &str| s.parse::<OrientationSeq>().unwrap();
        assert_eq!(gl_intertwiner_dim(&seq("o"), &seq("^"), &p).unwrap(), 0);
        assert_eq!(gl_intertwiner_dim(&seq("^"), &seq("^"), &p).unwrap(), 1);
        assert_eq!(gl_intertwiner_dim(&seq("^v"), &seq("v^"), &p).unwrap(), 2);
        assert_eq!(gl_intertwiner_dim(&seq("^v"), &seq(""), &p).unwrap(), 1);
        assert_eq!(gl_intertwiner_dim(&seq("^"), &seq("^oo"), &p).unwrap(), 1);
        assert_eq!(gl_intertwiner_dim(&seq("^^"), &seq(""), &p).unwrap(), 0);
    }

    #[test]
    fn action_ranks() {
        let opts = VerifyOptions::default();
        assert_eq!(brauer_action_rank(&params(1, 1, Mode::Even), 2, &opts).unwrap(), 3);
        let r = brauer_action_rank(&params(0, 1, Mode::Even), 2, &opts).unwrap();
        assert!(r <= 3);
    }

    #[test]
    fn isomorphism_small_cases() {
        let opts = VerifyOptions::default();
        let r = verify_isomorphism(&params(1, 1, Mode::Even), 2, &opts).unwrap();
        assert!(r.iso && r.hypotheses_satisfied);
        assert_eq!((r.image_rank, r.commutant_dim, r.brauer_dim), (3, 3, 3));
        let r = verify_isomorphism(&params(2, 0, Mode::Even), 2, &opts).unwrap();
        assert!(!r.iso && !r.hypotheses_satisfied);
        assert_eq!(r.commutant_dim, 4);
        let r = verify_isomorphism(&params(1, 0, Mode::Odd), 2, &opts).unwrap();
        assert_eq!((r.image_rank, r.commutant_dim), (3, 3));
        assert!(!r.hypotheses_satisfied);
        let tiny = VerifyOptions { budget: 10, ..opts };
        assert!(matches!(verify_isomorphism(&params(1, 1, Mode::Even), 2, &tiny), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn report_json_fields() {
        let r = verify_isomorphism(&params(1, 1, Mode::Even), 2, &VerifyOptions::default()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        for key in [
            "m",
            "n",
            "mode",
            "d",
            "delta",
            "brauer_dim",
            "image_rank",
            "commutant_dim",
            "injective",
            "surjective",
            "iso",
            "hypotheses_satisfied",
        ] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["mode"], "even");
        assert_eq!(v["delta"], "0");
        let back: VerificationReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn decomposition_round_trip() {
        let p = params(2, 1, Mode::Even);
        let sp = TensorSpace::new(p);
        let x = evaluate_word(&"e1 s2".parse().unwrap(), 3, &p.delta()).unwrap();
        let f = theta(&psi_element(&x, p.mode).unwrap(), &sp).unwrap();
        let dec = decompose_in_brauer_basis(&f, &p, 3).unwrap();
        assert!(dec.residual_is_zero());
        let b = x.terms().keys().next().unwrap().clone();
        assert_eq!(dec.coefficients, BTreeMap::from([(b, int(1))]));
    }

    #[test]
    fn decomposition_errors() {
        let p = params(1, 1, Mode::Even);
        let sp = TensorSpace::new(p);
        let mut f = SparseOperator::zero(&sp, 2, 2);
        f.matrix.set(0, 1, int(1));
        assert!(matches!(decompose_in_brauer_basis(&f, &p, 2), Err(Error::NonEquivariant(_))));
        let q = params(1, 0, Mode::Odd);
        let sq = TensorSpace::new(q);
        let id = SparseOperator::identity(&sq, 2);
        assert!(matches!(decompose_in_brauer_basis(&id, &q, 2), Err(Error::AmbiguousReadOff(_))));
    }

    #[test]
    fn commutant_elements_decompose() {
        let p = params(1, 1, Mode::Even);
        for f in osp_commutant_basis(&p, 2, &VerifyOptions::default()).unwrap().elements {
            assert!(decompose_in_brauer_basis(&f, &p, 2).unwrap().residual_is_zero());
        }
        let q = params(2, 0, Mode::Even);
        let leftovers = osp_commutant_basis(&q, 2, &VerifyOptions::default())
            .unwrap()
            .elements
            .iter()
            .filter(|f| !decompose_in_brauer_basis(f, &q, 2).unwrap().residual_is_zero())
            .count();
        assert!(leftovers >= 1);
    }
}
