//! Linear maps on tensor powers of `V`: the signed Lie superalgebra action,
//! the Brauer generators, the weight functor on oriented diagrams, the action
//! `Θ` of the additive closure, and permutations of tensor factors.
//!
//! A basis tensor `v_{i_1} ⊗ ... ⊗ v_{i_d}` is encoded as the base-`dim V`
//! number with digits `pos(i_1), ..., pos(i_d)`, first factor most significant.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde_json::Value;

use crate::algebra::{Generator, GeneratorWord};
use crate::diagram::{GeneralizedDiagram, GeneratorKind};
use crate::error::{Error, Result};
use crate::linalg::{SparseMatrix, SparseVector};
use crate::oriented::{MatEndo, Orientation, OrientationSeq, OrientedMorphism};
use crate::scalar::{self, int, Scalar};
use crate::superalgebra::{form, right_dual, BasisIndex, LieElement, Mode, Params};

/// Largest tensor power handled by the dense enumerations below.
pub const MAX_TENSOR_POWER: usize = 8;

pub type TensorIndex = Vec<BasisIndex>;

/// Encodes and decodes basis tensors of `V^{⊗len}`.
#[derive(Clone, Debug)]
pub struct TensorSpace {
    pub params: Params,
    basis: Vec<BasisIndex>,
    parities: Vec<usize>,
}

impl TensorSpace {
    pub fn new(params: Params) -> Self {
        Self { params, basis: params.basis(), parities: params.parities() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn size(&self, len: usize) -> usize {
        self.dim().pow(len as u32)
    }

    pub fn basis(&self) -> &[BasisIndex] {
        &self.basis
    }

    pub fn parity_of(&self, pos: usize) -> usize {
        self.parities[pos]
    }

    pub fn encode(&self, digits: &[usize]) -> usize {
        digits.iter().fold(0, |acc, &x| acc * self.dim() + x)
    }

    pub fn decode(&self, mut index: usize, len: usize) -> Vec<usize> {
        let mut out = vec![0; len];
        for slot in out.iter_mut().rev() {
            *slot = index % self.dim();
            index /= self.dim();
        }
        out
    }

    pub fn encode_index(&self, t: &[BasisIndex]) -> Result<usize> {
        let digits: Vec<usize> = t.iter().map(|&i| self.params.position(i)).collect::<Result<_>>()?;
        Ok(self.encode(&digits))
    }

    pub fn decode_index(&self, index: usize, len: usize) -> TensorIndex {
        self.decode(index, len).into_iter().map(|x| self.basis[x]).collect()
    }

    /// Total parity of a basis tensor.
    pub fn tensor_parity(&self, index: usize, len: usize) -> usize {
        self.decode(index, len).iter().map(|&x| self.parities[x]).sum::<usize>() % 2
    }

    /// Orientation sequence of the summand `W_s` containing a basis tensor.
    pub fn summand(&self, index: usize, len: usize) -> OrientationSeq {
        OrientationSeq(self.decode_index(index, len).into_iter().map(orientation_of).collect())
    }
}

pub fn orientation_of(i: BasisIndex) -> Orientation {
    match i {
        BasisIndex::Zero => Orientation::Circle,
        BasisIndex::Plain(_) => Orientation::Up,
        BasisIndex::Barred(_) => Orientation::Down,
    }
}

/// Tensor literal such as `1~,0,3`.
pub fn parse_tensor_index(text: &str) -> Result<TensorIndex> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(str::parse).collect()
}

pub fn format_tensor_index(t: &[BasisIndex]) -> String {
    t.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// A linear map `V^{⊗in_len} → V^{⊗out_len}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseOperator {
    pub in_len: usize,
    pub out_len: usize,
    pub matrix: SparseMatrix,
}

impl SparseOperator {
    pub fn zero(space: &TensorSpace, in_len: usize, out_len: usize) -> Self {
        Self { in_len, out_len, matrix: SparseMatrix::new(space.size(out_len), space.size(in_len)) }
    }

    pub fn identity(space: &TensorSpace, len: usize) -> Self {
        Self { in_len: len, out_len: len, matrix: SparseMatrix::identity(space.size(len)) }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.in_len != other.out_len || self.matrix.cols() != other.matrix.rows() {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose maps of tensor lengths {}->{} and {}->{}",
                self.in_len, self.out_len, other.in_len, other.out_len
            )));
        }
        Ok(Self { in_len: other.in_len, out_len: self.out_len, matrix: self.matrix.mul(&other.matrix) })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(Self { matrix: self.matrix.add(&other.matrix), ..self.clone() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(Self { matrix: self.matrix.sub(&other.matrix), ..self.clone() })
    }

    pub fn scale(&self, factor: &Scalar) -> Self {
        Self { matrix: self.matrix.scale(factor), ..self.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn get(&self, space: &TensorSpace, out: &[BasisIndex], input: &[BasisIndex]) -> Result<Scalar> {
        Ok(self.matrix.get(space.encode_index(out)?, space.encode_index(input)?))
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.in_len != other.in_len || self.out_len != other.out_len || self.matrix.rows() != other.matrix.rows() {
            return Err(Error::DimensionMismatch("operators of different shapes".into()));
        }
        Ok(())
    }

    /// Whether `self` and `other` commute as square matrices.
    pub fn commutes_with(&self, other: &Self) -> bool {
        self.matrix.mul(&other.matrix) == other.matrix.mul(&self.matrix)
    }

    /// JSON object `{"out|in": "p/q"}` with tensor literals as keys.
    pub fn to_json(&self, space: &TensorSpace) -> Value {
        let map = self.matrix.iter().map(|(r, c, v)| {
            let key = format!(
                "{}|{}",
                format_tensor_index(&space.decode_index(r, self.out_len)),
                format_tensor_index(&space.decode_index(c, self.in_len))
            );
            (key, Value::String(scalar::format(v)))
        });
        Value::Object(map.collect())
    }

    /// Parses the format of [`SparseOperator::to_json`] for an endomorphism of `V^{⊗d}`.
    pub fn from_json(value: &Value, space: &TensorSpace, d: usize) -> Result<Self> {
        let obj = value.as_object().ok_or_else(|| Error::Parse("operator JSON must be an object".into()))?;
        let mut out = Self::zero(space, d, d);
        for (key, v) in obj {
            let (o, i) = key.split_once('|').ok_or_else(|| Error::Parse(format!("key {key:?} lacks '|'")))?;
            let (o, i) = (parse_tensor_index(o)?, parse_tensor_index(i)?);
            if o.len() != d || i.len() != d {
                return Err(Error::DimensionMismatch(format!("key {key:?} is not a pair of length-{d} tensors")));
            }
            out.matrix.add_to(space.encode_index(&o)?, space.encode_index(&i)?, json_scalar(v)?);
        }
        Ok(out)
    }
}

fn json_scalar(v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => scalar::parse(s),
        Value::Number(n) => scalar::parse(&n.to_string()),
        other => Err(Error::Parse(format!("expected a rational string, got {other}"))),
    }
}

/// Parses `{"1~,0": "p/q", ...}` into a vector of `V^{⊗d}`.
pub fn vector_from_json(value: &Value, space: &TensorSpace, d: usize) -> Result<SparseVector> {
    let obj = value.as_object().ok_or_else(|| Error::Parse("vector JSON must be an object".into()))?;
    let mut out = SparseVector::new();
    for (key, v) in obj {
        let idx = parse_tensor_index(key)?;
        if idx.len() != d {
            return Err(Error::DimensionMismatch(format!("tensor {key:?} has length {} not {d}", idx.len())));
        }
        let c = json_scalar(v)?;
        let slot = out.entry(space.encode_index(&idx)?).or_insert_with(Scalar::zero);
        *slot += c;
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

pub fn vector_to_json(v: &SparseVector, space: &TensorSpace, d: usize) -> Value {
    let map =
        v.iter().map(|(&k, c)| (format_tensor_index(&space.decode_index(k, d)), Value::String(scalar::format(c))));
    Value::Object(map.collect())
}

fn check_power(d: usize) -> Result<()> {
    if d > MAX_TENSOR_POWER {
        return Err(Error::LimitExceeded { d, limit: MAX_TENSOR_POWER });
    }
    Ok(())
}

/// `X.(w_1 ⊗ ... ⊗ w_d) = Σ_k (-1)^{|X|(|w_1|+...+|w_{k-1}|)} w_1 ⊗ ... ⊗ X w_k ⊗ ... ⊗ w_d`.
pub fn act_lie(x: &LieElement, v: &SparseVector, space: &TensorSpace, d: usize) -> Result<SparseVector> {
    let x = LieElement::new(&space.params, x.matrix.clone())?;
    let columns = x.matrix.transpose();
    let mut out = SparseVector::new();
    for (&idx, coeff) in v {
        let digits = space.decode(idx, d);
        let mut prefix = 0;
        for k in 0..d {
            let sign = scalar::sign(x.parity * prefix);
            for (&row, val) in columns.row(digits[k]) {
                let mut next = digits.clone();
                next[k] = row;
                let slot = out.entry(space.encode(&next)).or_insert_with(Scalar::zero);
                *slot += &sign * val * coeff;
            }
            prefix += space.parity_of(digits[k]);
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Matrix of `act_lie(X, ·)` on `V^{⊗d}`.
pub fn lie_operator(x: &LieElement, space: &TensorSpace, d: usize) -> Result<SparseOperator> {
    check_power(d)?;
    let mut op = SparseOperator::zero(space, d, d);
    for col in 0..space.size(d) {
        let image = act_lie(x, &SparseVector::from([(col, scalar::one())]), space, d)?;
        for (row, val) in image {
            op.matrix.set(row, col, val);
        }
    }
    Ok(op)
}

/// `σ(v ⊗ w) = (-1)^{|v||w|} w ⊗ v` and
/// `τ(v ⊗ w) = <v, w> Σ_i (-1)^{|v_i|} v_i ⊗ v_i^*` on `V ⊗ V`.
pub fn sigma_tau(space: &TensorSpace) -> (SparseOperator, SparseOperator) {
    let p = space.params;
    let mut sigma = SparseOperator::zero(space, 2, 2);
    let mut tau = SparseOperator::zero(space, 2, 2);
    let dim = space.dim();
    let mut casimir = Vec::new();
    for x in 0..dim {
        let (dual, eps) = right_dual(&p, space.basis[x]);
        let y = p.position(dual).expect("dual index is in range");
        let sign = if space.parity_of(x) == 1 { -eps } else { eps };
        casimir.push((space.encode(&[x, y]), sign));
    }
    for a in 0..dim {
        for b in 0..dim {
            let col = space.encode(&[a, b]);
            let sign = scalar::sign(space.parity_of(a) * space.parity_of(b));
            sigma.matrix.set(space.encode(&[b, a]), col, sign);
            let f = form(&p, space.basis[a], space.basis[b]);
            if f != 0 {
                for &(row, c) in &casimir {
                    tau.matrix.add_to(row, col, int(f * c));
                }
            }
        }
    }
    (sigma, tau)
}

/// Applies a two-factor operator to factors `k, k+1` of `V^{⊗d}`.
fn embed_two_factor(local: &SparseOperator, k: usize, d: usize, space: &TensorSpace) -> SparseOperator {
    let mut op = SparseOperator::zero(space, d, d);
    let dim = space.dim();
    let local_cols = local.matrix.transpose();
    for col in 0..space.size(d) {
        let digits = space.decode(col, d);
        let pair = digits[k] * dim + digits[k + 1];
        for (&row, val) in local_cols.row(pair) {
            let mut next = digits.clone();
            next[k] = row / dim;
            next[k + 1] = row % dim;
            op.matrix.set(space.encode(&next), col, val.clone());
        }
    }
    op
}

/// `s_i` or `e_i` acting on `V^{⊗d}` (`i` is 1-based).
pub fn brauer_operator(kind: GeneratorKind, i: usize, d: usize, space: &TensorSpace) -> Result<SparseOperator> {
    check_power(d)?;
    if kind == GeneratorKind::Identity {
        return Ok(SparseOperator::identity(space, d));
    }
    if i == 0 || i + 1 > d {
        return Err(Error::IndexOutOfRange { index: i, max: d.saturating_sub(1) });
    }
    let (sigma, tau) = sigma_tau(space);
    let local = if kind == GeneratorKind::S { sigma } else { tau };
    Ok(embed_two_factor(&local, i - 1, d, space))
}

/// Operator of a generator word, `op(g_1 g_2 ...) = op(g_1) op(g_2) ...`.
pub fn word_operator(word: &GeneratorWord, d: usize, space: &TensorSpace) -> Result<SparseOperator> {
    let mut acc = SparseOperator::identity(space, d);
    for &Generator { kind, index } in &word.0 {
        acc = acc.compose(&brauer_operator(kind, index, d, space)?)?;
    }
    Ok(acc)
}

/// An oriented diagram with basis labels on its bottom (`i`) and top (`j`) vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledOrientedDiagram {
    pub morphism: OrientedMorphism,
    pub bottom_labels: TensorIndex,
    pub top_labels: TensorIndex,
}

/// Crossings and horizontal arcs of a diagram, precomputed for weights.
struct WeightData {
    pairs: Vec<(usize, usize)>,
    crossings: Vec<(usize, usize)>,
    /// `(pair, left vertex, is_cap)` for every horizontal pair.
    arcs: Vec<(usize, usize, bool)>,
}

impl WeightData {
    fn new(b: &GeneralizedDiagram) -> Self {
        let pairs: Vec<(usize, usize)> = b.pair_indices().collect();
        let mut crossings = Vec::new();
        for x in 0..pairs.len() {
            for y in x + 1..pairs.len() {
                if b.pairs_cross(pairs[x], pairs[y]) {
                    crossings.push((x, y));
                }
            }
        }
        let top = b.top();
        let arcs = pairs
            .iter()
            .enumerate()
            .filter(|(_, &(a, c))| (a < top) == (c < top))
            .map(|(k, &(a, c))| (k, a.min(c), a >= top))
            .collect();
        Self { pairs, crossings, arcs }
    }

    /// Sign for a consistent labelling given by per-pair absolute values.
    fn sign(&self, abs: &[usize], orient: impl Fn(usize) -> Orientation, m: usize) -> i64 {
        let odd = |k: usize| abs[k] > m;
        let mut sign = 1;
        for &(x, y) in &self.crossings {
            if odd(x) && odd(y) {
                sign = -sign;
            }
        }
        for &(k, left, is_cap) in &self.arcs {
            let flips = if is_cap { orient(left) == Orientation::Down } else { orient(left) == Orientation::Up };
            if flips && odd(k) {
                sign = -sign;
            }
        }
        sign
    }
}

/// Weight of a labelled oriented diagram: 0 unless absolute values are
/// constant on blocks; otherwise `(-1)^{|i||j|}` per crossing of strands
/// labelled `i`, `j`, and `-1` for every cap whose left end is `v` and every
/// cup whose left end is `^` when the label exceeds `m`.
pub fn weight(ld: &LabelledOrientedDiagram, p: &Params) -> Result<i64> {
    let f = &ld.morphism;
    let b = &f.diagram;
    if ld.top_labels.len() != b.top() || ld.bottom_labels.len() != b.bottom() {
        return Err(Error::DimensionMismatch("label count differs from vertex count".into()));
    }
    for (labels, seq) in [(&ld.top_labels, &f.top), (&ld.bottom_labels, &f.bottom)] {
        for (&l, &o) in labels.iter().zip(&seq.0) {
            if orientation_of(l) != o {
                return Err(Error::InvalidOrientation(format!("label {l} on a vertex oriented {}", o.symbol())));
            }
            if l.abs() > p.m + p.n {
                return Err(Error::IndexOutOfRange { index: l.abs(), max: p.m + p.n });
            }
        }
    }
    let label = |i: usize| if i < b.top() { ld.top_labels[i] } else { ld.bottom_labels[i - b.top()] };
    let data = WeightData::new(b);
    let mut abs = Vec::with_capacity(data.pairs.len());
    for &(a, c) in &data.pairs {
        if label(a).abs() != label(c).abs() {
            return Ok(0);
        }
        abs.push(label(a).abs());
    }
    Ok(data.sign(&abs, |i| f.orientation_at(i), p.m))
}

/// `F(f)`: the map `W_s → W_t` with matrix entries `wt(f_i^j)`, as an
/// operator `V^{⊗len s} → V^{⊗len t}` vanishing off `W_s`.
pub fn functor_f(f: &OrientedMorphism, space: &TensorSpace) -> Result<SparseOperator> {
    let p = space.params;
    if p.mode == Mode::Even && (f.top.has_circle() || f.bottom.has_circle()) {
        return Err(Error::ModeMismatch(format!("{f} uses o, which has no summand in even mode")));
    }
    let b = &f.diagram;
    check_power(b.top().max(b.bottom()))?;
    let (top, bottom) = (b.top(), b.bottom());
    let data = WeightData::new(b);
    let k = p.m + p.n;
    let mut op = SparseOperator::zero(space, bottom, top);
    if k == 0 && !data.pairs.is_empty() {
        return Ok(op);
    }
    let mut vertex_abs = vec![0usize; top + bottom];
    let mut abs = vec![1usize; data.pairs.len()];
    loop {
        for (x, &(a, c)) in data.pairs.iter().enumerate() {
            vertex_abs[a] = abs[x];
            vertex_abs[c] = abs[x];
        }
        let digit = |i: usize| -> usize {
            let idx = match f.orientation_at(i) {
                Orientation::Circle => BasisIndex::Zero,
                Orientation::Up => BasisIndex::Plain(vertex_abs[i]),
                Orientation::Down => BasisIndex::Barred(vertex_abs[i]),
            };
            p.position(idx).expect("label in range")
        };
        let out: Vec<usize> = (0..top).map(digit).collect();
        let input: Vec<usize> = (top..top + bottom).map(digit).collect();
        let w = data.sign(&abs, |i| f.orientation_at(i), p.m);
        op.matrix.set(space.encode(&out), space.encode(&input), int(w));

        let mut x = 0;
        loop {
            if x == abs.len() {
                return Ok(op);
            }
            if abs[x] < k {
                abs[x] += 1;
                break;
            }
            abs[x] = 1;
            x += 1;
        }
    }
}

/// `F` extended linearly to a combination of morphisms with common shape.
pub fn functor_f_combination<'a>(
    terms: impl IntoIterator<Item = (&'a OrientedMorphism, &'a Scalar)>,
    space: &TensorSpace,
    in_len: usize,
    out_len: usize,
) -> Result<SparseOperator> {
    let mut acc = SparseOperator::zero(space, in_len, out_len);
    for (f, c) in terms {
        acc = acc.add(&functor_f(f, space)?.scale(c))?;
    }
    Ok(acc)
}

/// `Θ(A) = Σ_{(t,s)} F(A_{(t,s)})` on `V^{⊗d} = ⊕_s W_s`.
pub fn theta(a: &MatEndo, space: &TensorSpace) -> Result<SparseOperator> {
    if a.mode() != space.params.mode {
        return Err(Error::ModeMismatch(format!("matrix in {} mode, space in {} mode", a.mode(), space.params.mode)));
    }
    let d = a.d();
    check_power(d)?;
    let mut acc = SparseOperator::zero(space, d, d);
    for (f, c) in a.terms() {
        acc.matrix = acc.matrix.add(&functor_f(&f, space)?.matrix.scale(c));
    }
    Ok(acc)
}

/// Moves factor `k` to position `perm[k]` with the Koszul sign
/// `(-1)^{|w_k||w_l|}` for each pair `k < l` that changes order.
pub fn apply_permutation(perm: &[usize], v: &SparseVector, space: &TensorSpace) -> Result<SparseVector> {
    check_permutation(perm)?;
    let d = perm.len();
    let mut out = SparseVector::new();
    for (&idx, c) in v {
        let (image, sign) = permute_basis_tensor(perm, idx, d, space);
        let slot = out.entry(image).or_insert_with(Scalar::zero);
        *slot += scalar::sign(sign) * c;
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

fn permute_basis_tensor(perm: &[usize], idx: usize, d: usize, space: &TensorSpace) -> (usize, usize) {
    let digits = space.decode(idx, d);
    let mut next = vec![0; d];
    let mut sign = 0;
    for k in 0..d {
        next[perm[k]] = digits[k];
        for l in k + 1..d {
            if perm[k] > perm[l] {
                sign += space.parity_of(digits[k]) * space.parity_of(digits[l]);
            }
        }
    }
    (space.encode(&next), sign)
}

fn check_permutation(perm: &[usize]) -> Result<()> {
    let mut seen = vec![false; perm.len()];
    for &x in perm {
        if x >= perm.len() || std::mem::replace(&mut seen[x], true) {
            return Err(Error::Parse(format!("{perm:?} is not a permutation of 0..{}", perm.len())));
        }
    }
    Ok(())
}

pub fn permutation_operator(perm: &[usize], space: &TensorSpace) -> Result<SparseOperator> {
    check_permutation(perm)?;
    let d = perm.len();
    check_power(d)?;
    let mut op = SparseOperator::zero(space, d, d);
    for col in 0..space.size(d) {
        let (row, sign) = permute_basis_tensor(perm, col, d, space);
        op.matrix.set(row, col, scalar::sign(sign));
    }
    Ok(op)
}

/// Lexicographically first reduced word `(i_1, ..., i_L)` (1-based) with
/// `perm = s_{i_1} ∘ ... ∘ s_{i_L}`, where `s_i` swaps positions `i, i+1`.
pub fn reduced_word(perm: &[usize]) -> Result<Vec<usize>> {
    check_permutation(perm)?;
    let mut current = perm.to_vec();
    let mut word = Vec::new();
    loop {
        let mut inverse = vec![0; current.len()];
        for (k, &x) in current.iter().enumerate() {
            inverse[x] = k;
        }
        let Some(i) = (0..current.len().saturating_sub(1)).find(|&i| inverse[i + 1] < inverse[i]) else {
            return Ok(word);
        };
        word.push(i + 1);
        for x in current.iter_mut() {
            if *x == i {
                *x = i + 1;
            } else if *x == i + 1 {
                *x = i;
            }
        }
    }
}

/// The shortest permutation with `s_k = t_{σ(k)}`: the `r`-th occurrence of
/// each symbol in `s` goes to its `r`-th occurrence in `t`.
pub fn minimal_permutation(s: &OrientationSeq, t: &OrientationSeq) -> Result<Vec<usize>> {
    let incompatible = || Error::IncompatibleSequences(format!("{s} is not a rearrangement of {t}"));
    if s.len() != t.len() {
        return Err(incompatible());
    }
    let mut slots: BTreeMap<Orientation, Vec<usize>> = BTreeMap::new();
    for (k, &o) in t.0.iter().enumerate().rev() {
        slots.entry(o).or_default().push(k);
    }
    s.0.iter().map(|o| slots.get_mut(o).and_then(Vec::pop).ok_or_else(incompatible)).collect()
}

/// `ψ_σ : W_s → W_t` for the minimal `σ`, composed from `s_i` operators along
/// its lexicographically first reduced word and restricted to `W_s`.
pub fn psi_sigma(s: &OrientationSeq, t: &OrientationSeq, space: &TensorSpace) -> Result<SparseOperator> {
    let perm = minimal_permutation(s, t)?;
    let d = perm.len();
    let mut op = SparseOperator::identity(space, d);
    for i in reduced_word(&perm)? {
        op = op.compose(&brauer_operator(GeneratorKind::S, i, d, space)?)?;
    }
    let mut restricted = SparseOperator::zero(space, d, d);
    for (r, c, v) in op.matrix.iter() {
        if space.summand(c, d) == *s {
            restricted.matrix.set(r, c, v.clone());
        }
    }
    Ok(restricted)
}

/// Projection of `V^{⊗d}` onto `W_s`.
pub fn summand_projection(s: &OrientationSeq, space: &TensorSpace) -> SparseOperator {
    let d = s.len();
    let mut op = SparseOperator::zero(space, d, d);
    for idx in 0..space.size(d) {
        if space.summand(idx, d) == *s {
            op.matrix.set(idx, idx, scalar::one());
        }
    }
    op
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::enumerate_brauer;
    use crate::oriented::{compose_oriented, hom_basis, psi_embed};
    use crate::superalgebra::{gl_embedding, osp_basis};

    fn space(m: usize, n: usize, mode: Mode) -> TensorSpace {
        TensorSpace::new(Params::new(m, n, mode))
    }

    fn tensor(sp: &TensorSpace, text: &str) -> usize {
        sp.encode_index(&parse_tensor_index(text).unwrap()).unwrap()
    }

    fn seq(s: &str) -> OrientationSeq {
        s.parse().unwrap()
    }

    #[test]
    fn encoding_round_trip() {
        let sp = space(1, 1, Mode::Odd);
        for idx in 0..sp.size(3) {
            assert_eq!(sp.encode_index(&sp.decode_index(idx, 3)).unwrap(), idx);
        }
        assert_eq!(format_tensor_index(&parse_tensor_index("1~,0,2").unwrap()), "1~,0,2");
    }

    #[test]
    fn sigma_tau_examples() {
        let sp = space(1, 1, Mode::Even);
        let (sigma, tau) = sigma_tau(&sp);
        assert_eq!(sigma.matrix.get(tensor(&sp, "2,2"), tensor(&sp, "2,2")), int(-1));
        assert_eq!(sigma.matrix.get(tensor(&sp, "2,1"), tensor(&sp, "1,2")), int(1));
        let col = tensor(&sp, "1,1");
        assert!((0..sp.size(2)).all(|r| tau.matrix.get(r, col).is_zero()));

        let sp = space(1, 0, Mode::Even);
        let (_, tau) = sigma_tau(&sp);
        let col = tensor(&sp, "1~,1");
        let image: Vec<(usize, Scalar)> =
            (0..4).map(|r| (r, tau.matrix.get(r, col))).filter(|(_, v)| !v.is_zero()).collect();
        assert_eq!(image, vec![(tensor(&sp, "1~,1"), int(1)), (tensor(&sp, "1,1~"), int(1))]);
    }

    #[test]
    fn generator_relations_hold() {
        for (m, n, mode) in [(1, 1, Mode::Even), (1, 1, Mode::Odd), (0, 1, Mode::Odd), (2, 0, Mode::Even)] {
            let sp = space(m, n, mode);
            let delta = sp.params.delta();
            let e1 = brauer_operator(GeneratorKind::E, 1, 3, &sp).unwrap();
            let e2 = brauer_operator(GeneratorKind::E, 2, 3, &sp).unwrap();
            let s1 = brauer_operator(GeneratorKind::S, 1, 3, &sp).unwrap();
            assert_eq!(e1.compose(&e1).unwrap(), e1.scale(&delta));
            assert_eq!(s1.compose(&e1).unwrap(), e1);
            assert_eq!(e1.compose(&e2).unwrap().compose(&e1).unwrap(), e1);
            assert!(brauer_operator(GeneratorKind::E, 3, 3, &sp).is_err());
        }
    }

    /// Action through the coproduct, folding one factor at a time.
    fn coproduct_oracle(x: &LieElement, v: &SparseVector, sp: &TensorSpace, d: usize) -> SparseVector {
        let mut out = SparseVector::new();
        for (&idx, c) in v {
            let digits = sp.decode(idx, d);
            let head = digits[0];
            let x_head = x.matrix.transpose();
            for (&row, val) in x_head.row(head) {
                let mut next = digits.clone();
                next[0] = row;
                *out.entry(sp.encode(&next)).or_insert_with(Scalar::zero) += val * c;
            }
            if d > 1 {
                let tail_idx = sp.encode(&digits[1..]);
                let tail = coproduct_oracle(x, &SparseVector::from([(tail_idx, c.clone())]), sp, d - 1);
                let sign = scalar::sign(x.parity * sp.parity_of(head));
                for (t, val) in tail {
                    let mut next = vec![head];
                    next.extend(sp.decode(t, d - 1));
                    *out.entry(sp.encode(&next)).or_insert_with(Scalar::zero) += &sign * val;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    #[test]
    fn lie_action_matches_coproduct() {
        let sp = space(1, 1, Mode::Odd);
        for x in osp_basis(&sp.params) {
            for idx in (0..sp.size(3)).step_by(7) {
                let v = SparseVector::from([(idx, int(2)), ((idx * 5 + 3) % sp.size(3), int(-1))]);
                assert_eq!(act_lie(&x, &v, &sp, 3).unwrap(), coproduct_oracle(&x, &v, &sp, 3));
            }
        }
    }

    #[test]
    fn odd_element_sign_on_second_factor() {
        let sp = space(0, 1, Mode::Odd);
        let x = osp_basis(&sp.params).into_iter().find(|x| x.parity == 1).unwrap();
        let v = SparseVector::from([(tensor(&sp, "1,1"), int(1))]);
        let direct = act_lie(&x, &v, &sp, 2).unwrap();
        let first = act_lie(&x, &SparseVector::from([(tensor(&sp, "1"), int(1))]), &sp, 1).unwrap();
        for (&k, c) in &first {
            let digits = sp.decode(k, 1);
            let key = sp.encode(&[sp.params.position(BasisIndex::Plain(1)).unwrap(), digits[0]]);
            assert_eq!(direct.get(&key).cloned().unwrap_or_default(), -c.clone());
        }
    }

    #[test]
    fn equivariance() {
        for (m, n, mode) in [(1, 1, Mode::Odd), (1, 1, Mode::Even), (0, 1, Mode::Odd)] {
            let sp = space(m, n, mode);
            let ops: Vec<SparseOperator> = [GeneratorKind::S, GeneratorKind::E]
                .into_iter()
                .map(|k| brauer_operator(k, 1, 2, &sp).unwrap())
                .collect();
            for x in osp_basis(&sp.params) {
                let rho = lie_operator(&x, &sp, 2).unwrap();
                for op in &ops {
                    assert!(op.commutes_with(&rho));
                }
            }
        }
    }

    fn labelled(t: &str, b: &str, s: &str, top: &str, bottom: &str) -> LabelledOrientedDiagram {
        let (_, _, blocks) = crate::diagram::parse_blocks(b).unwrap();
        let diagram = GeneralizedDiagram::from_blocks(seq(t).len(), seq(s).len(), &blocks).unwrap();
        LabelledOrientedDiagram {
            morphism: OrientedMorphism::new(seq(t), diagram, seq(s)).unwrap(),
            bottom_labels: parse_tensor_index(bottom).unwrap(),
            top_labels: parse_tensor_index(top).unwrap(),
        }
    }

    #[test]
    fn weight_examples() {
        let p = Params::new(1, 1, Mode::Odd);
        let cap = labelled("", "(1*,2*)", "^v", "", "2,2~");
        assert_eq!(weight(&cap, &p).unwrap(), 1);
        let cap = labelled("", "(1*,2*)", "v^", "", "2~,2");
        assert_eq!(weight(&cap, &p).unwrap(), -1);
        let cup = labelled("^v", "(1,2)", "", "2,2~", "");
        assert_eq!(weight(&cup, &p).unwrap(), -1);
        let small = labelled("^v", "(1,2)", "", "1,1~", "");
        assert_eq!(weight(&small, &p).unwrap(), 1);
        let inconsistent = labelled("^v", "(1,2)", "", "1,2~", "");
        assert_eq!(weight(&inconsistent, &p).unwrap(), 0);
        let crossing = labelled("^^", "(1,2*)(2,1*)", "^^", "2,2", "2,2");
        assert_eq!(weight(&crossing, &p).unwrap(), -1);
    }

    #[test]
    fn kinks_have_weight_one() {
        for (m, n) in [(1, 1), (0, 2), (2, 1)] {
            let sp = space(m, n, Mode::Even);
            for o in ["^", "v"] {
                let flipped = if o == "^" { "v" } else { "^" };
                let cup = OrientedMorphism::new(
                    seq(&format!("{o}{flipped}{o}")),
                    GeneralizedDiagram::from_blocks(3, 1, &crate::diagram::parse_blocks("(1,2)(3,1*)").unwrap().2)
                        .unwrap(),
                    seq(o),
                )
                .unwrap();
                let cap = OrientedMorphism::new(
                    seq(o),
                    GeneralizedDiagram::from_blocks(1, 3, &crate::diagram::parse_blocks("(1,1*)(2*,3*)").unwrap().2)
                        .unwrap(),
                    seq(&format!("{o}{flipped}{o}")),
                )
                .unwrap();
                let kink = functor_f(&cap, &sp).unwrap().compose(&functor_f(&cup, &sp).unwrap()).unwrap();
                assert_eq!(kink, functor_f(&OrientedMorphism::identity(&seq(o)), &sp).unwrap());
            }
        }
    }

    #[test]
    fn circle_evaluates_to_m_minus_n() {
        for (m, n) in [(1, 1), (2, 1), (0, 2), (3, 0)] {
            let sp = space(m, n, Mode::Odd);
            let cup = OrientedMorphism::new(seq("^v"), diag_rect(2, 0, "(1,2)"), seq("")).unwrap();
            let cap = OrientedMorphism::new(seq(""), diag_rect(0, 2, "(1*,2*)"), seq("^v")).unwrap();
            let circle = functor_f(&cap, &sp).unwrap().compose(&functor_f(&cup, &sp).unwrap()).unwrap();
            assert_eq!(circle.matrix.get(0, 0), sp.params.circle());
            let cup = OrientedMorphism::new(seq("v^"), diag_rect(2, 0, "(1,2)"), seq("")).unwrap();
            let cap = OrientedMorphism::new(seq(""), diag_rect(0, 2, "(1*,2*)"), seq("v^")).unwrap();
            let circle = functor_f(&cap, &sp).unwrap().compose(&functor_f(&cup, &sp).unwrap()).unwrap();
            assert_eq!(circle.matrix.get(0, 0), sp.params.circle());
        }
    }

    fn diag_rect(top: usize, bottom: usize, text: &str) -> GeneralizedDiagram {
        GeneralizedDiagram::from_blocks(top, bottom, &crate::diagram::parse_blocks(text).unwrap().2).unwrap()
    }

    #[test]
    fn functor_identity_projects() {
        let sp = space(1, 1, Mode::Odd);
        for s in OrientationSeq::all(2, Mode::Odd) {
            assert_eq!(functor_f(&OrientedMorphism::identity(&s), &sp).unwrap(), summand_projection(&s, &sp));
        }
        let even = space(1, 1, Mode::Even);
        assert!(functor_f(&OrientedMorphism::identity(&seq("o")), &even).is_err());
    }

    #[test]
    fn functor_respects_reduction() {
        let sp = space(1, 1, Mode::Odd);
        for s in OrientationSeq::all(2, Mode::Odd) {
            for t in OrientationSeq::all(2, Mode::Odd) {
                for f in hom_basis(&s, &t) {
                    let r = f.reduce();
                    let full = functor_f(&f, &sp).unwrap();
                    let reduced = functor_f(&r, &sp).unwrap();
                    assert_eq!(full.matrix.nnz(), reduced.matrix.nnz());
                    for (row, col, v) in reduced.matrix.iter() {
                        let expand = |idx: usize, len: usize, seq: &OrientationSeq| {
                            let mut labels = sp.decode_index(idx, len).into_iter();
                            let full: TensorIndex =
                                seq.0
                                    .iter()
                                    .map(|&o| {
                                        if o == Orientation::Circle {
                                            BasisIndex::Zero
                                        } else {
                                            labels.next().unwrap()
                                        }
                                    })
                                    .collect();
                            sp.encode_index(&full).unwrap()
                        };
                        assert_eq!(&full.matrix.get(expand(row, r.top.len(), &t), expand(col, r.bottom.len(), &s)), v);
                    }
                }
            }
        }
    }

    #[test]
    fn functoriality_exhaustive_small() {
        for (m, n, mode) in [(1, 1, Mode::Odd), (1, 1, Mode::Even), (2, 1, Mode::Even)] {
            let sp = space(m, n, mode);
            let circle = sp.params.circle();
            let seqs = OrientationSeq::all(2, mode);
            for s in &seqs {
                for t in &seqs {
                    for r in &seqs {
                        for f in hom_basis(s, t) {
                            for g in hom_basis(t, r) {
                                let (gf, c) = compose_oriented(&g, &f, &circle).unwrap();
                                let lhs = functor_f(&gf, &sp).unwrap().scale(&c);
                                let rhs = functor_f(&g, &sp).unwrap().compose(&functor_f(&f, &sp).unwrap()).unwrap();
                                assert_eq!(lhs, rhs, "{g} after {f}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn theta_psi_matches_generators() {
        for (m, n, mode) in [(1, 1, Mode::Odd), (1, 1, Mode::Even), (0, 1, Mode::Odd), (2, 0, Mode::Even)] {
            let sp = space(m, n, mode);
            for kind in [GeneratorKind::S, GeneratorKind::E] {
                for i in 1..3 {
                    let b = GeneralizedDiagram::generator(3, kind, i).unwrap();
                    let lhs = theta(&psi_embed(&b, mode).unwrap(), &sp).unwrap();
                    assert_eq!(lhs, brauer_operator(kind, i, 3, &sp).unwrap(), "{kind:?}{i} {:?}", sp.params);
                }
            }
            assert_eq!(theta(&MatEndo::identity(3, mode), &sp).unwrap(), SparseOperator::identity(&sp, 3));
        }
    }

    #[test]
    fn theta_psi_is_multiplicative() {
        for (m, n, mode) in [(1, 1, Mode::Odd), (1, 0, Mode::Even)] {
            let sp = space(m, n, mode);
            let delta = sp.params.delta();
            let basis = enumerate_brauer(3).unwrap();
            let image: Vec<SparseOperator> =
                basis.iter().map(|b| theta(&psi_embed(b, mode).unwrap(), &sp).unwrap()).collect();
            for (a, ta) in basis.iter().zip(&image) {
                for (b, tb) in basis.iter().zip(&image) {
                    let r = a.compose(b).unwrap();
                    let k = basis.iter().position(|x| *x == r.diagram).unwrap();
                    assert_eq!(ta.compose(tb).unwrap(), image[k].scale(&scalar::pow(&delta, r.loops)));
                }
            }
        }
    }

    #[test]
    fn permutations() {
        let sp = space(1, 1, Mode::Even);
        let v = SparseVector::from([(tensor(&sp, "2,1,2~"), int(3))]);
        assert_eq!(apply_permutation(&[0, 1, 2], &v, &sp).unwrap(), v);
        let odd = SparseVector::from([(tensor(&sp, "2,2~"), int(1))]);
        assert_eq!(
            apply_permutation(&[1, 0], &odd, &sp).unwrap(),
            SparseVector::from([(tensor(&sp, "2~,2"), int(-1))])
        );
        for perm in [vec![2, 0, 1], vec![1, 2, 0], vec![2, 1, 0]] {
            let word = reduced_word(&perm).unwrap();
            let mut op = SparseOperator::identity(&sp, 3);
            for i in &word {
                op = op.compose(&brauer_operator(GeneratorKind::S, *i, 3, &sp).unwrap()).unwrap();
            }
            assert_eq!(op, permutation_operator(&perm, &sp).unwrap(), "{perm:?} {word:?}");
        }
        assert_eq!(reduced_word(&[2, 1, 0]).unwrap(), vec![1, 2, 1]);
        assert!(apply_permutation(&[0, 0], &v, &sp).is_err());
    }

    #[test]
    fn psi_sigma_is_equivariant_isomorphism() {
        let sp = space(1, 1, Mode::Even);
        let gl: Vec<SparseOperator> =
            gl_embedding(&sp.params).iter().map(|x| lie_operator(x, &sp, 2).unwrap()).collect();
        for (s, t) in [("^v", "v^"), ("v^", "^v"), ("^^", "^^")] {
            let (s, t) = (seq(s), seq(t));
            let psi = psi_sigma(&s, &t, &sp).unwrap();
            let back = psi_sigma(&t, &s, &sp).unwrap();
            assert_eq!(back.compose(&psi).unwrap(), summand_projection(&s, &sp));
            for rho in &gl {
                assert_eq!(psi.compose(rho).unwrap(), rho.compose(&psi).unwrap());
            }
        }
        assert_eq!(psi_sigma(&seq("^^"), &seq("^^"), &sp).unwrap(), summand_projection(&seq("^^"), &sp));
        assert!(matches!(psi_sigma(&seq("^^"), &seq("^v"), &sp), Err(Error::IncompatibleSequences(_))));
        let sp3 = space(1, 1, Mode::Odd);
        assert_eq!(minimal_permutation(&seq("^vo"), &seq("o^v")).unwrap(), vec![1, 2, 0]);
        assert!(psi_sigma(&seq("^vo"), &seq("o^v"), &sp3).is_ok());
    }

    #[test]
    fn vector_json_round_trip() {
        let sp = space(1, 1, Mode::Odd);
        let v: Value = serde_json::from_str(r#"{"1~,0": "1/2", "2,2": "-3"}"#).unwrap();
        let parsed = vector_from_json(&v, &sp, 2).unwrap();
        assert_eq!(vector_to_json(&parsed, &sp, 2), v);
        assert!(vector_from_json(&v, &sp, 3).is_err());
    }

    #[test]
    fn labelled_example_weight() {
        let d = labelled("v^vo", "(1,2)(3,1*)(3*,4*)(2*)(4)", "vo^v", "1~,1,2~,0", "2~,0,3,3~");
        for m in 0..=3 {
            let p = Params::new(m, 3 - m, Mode::Odd);
            assert_eq!(weight(&d, &p).unwrap(), 1, "m = {m}");
        }
    }
}
