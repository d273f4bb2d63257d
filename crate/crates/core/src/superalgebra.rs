//! The superspace `V`, its supersymmetric form, and explicit matrix bases of
//! the ortho-symplectic Lie superalgebra and of the embedded `gl(m|n)`.
//!
//! Basis vectors are ordered
//! `0 < 1~ < ... < m~ < 1 < ... < m < (m+1)~ < ... < (m+n)~ < m+1 < ... < m+n`,
//! with `0` present only in odd mode. Barred indices are written with a `~`
//! suffix. A vector is odd iff its absolute value exceeds `m`.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{solve, SparseMatrix, SparseVector};
use crate::scalar::{self, int, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `osp(2m|2n)`, no vector `v_0`.
    Even,
    /// `osp(2m+1|2n)`.
    Odd,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Even => "even",
            Mode::Odd => "odd",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Mode::Even),
            "odd" => Ok(Mode::Odd),
            _ => Err(Error::Parse(format!("mode must be even or odd, got {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Params {
    pub m: usize,
    pub n: usize,
    pub mode: Mode,
}

impl Params {
    pub fn new(m: usize, n: usize, mode: Mode) -> Self {
        Self { m, n, mode }
    }

    pub fn dim(&self) -> usize {
        2 * self.m + 2 * self.n + usize::from(self.mode == Mode::Odd)
    }

    /// Supertrace `dim V_0 - dim V_1`.
    pub fn delta(&self) -> Scalar {
        int(self.dim() as i64 - 4 * self.n as i64)
    }

    /// Circle value `m - n` of the oriented category.
    pub fn circle(&self) -> Scalar {
        int(self.m as i64 - self.n as i64)
    }

    pub fn basis(&self) -> Vec<BasisIndex> {
        let (m, n) = (self.m, self.n);
        let mut out = Vec::with_capacity(self.dim());
        if self.mode == Mode::Odd {
            out.push(BasisIndex::Zero);
        }
        out.extend((1..=m).map(BasisIndex::Barred));
        out.extend((1..=m).map(BasisIndex::Plain));
        out.extend((m + 1..=m + n).map(BasisIndex::Barred));
        out.extend((m + 1..=m + n).map(BasisIndex::Plain));
        out
    }

    /// Position of `i` in the ordered basis.
    pub fn position(&self, i: BasisIndex) -> Result<usize> {
        let (m, n) = (self.m, self.n);
        let off = usize::from(self.mode == Mode::Odd);
        let out_of_range = |a| Error::IndexOutOfRange { index: a, max: m + n };
        match i {
            BasisIndex::Zero if off == 1 => Ok(0),
            BasisIndex::Zero => Err(Error::ModeMismatch("v_0 exists only in odd mode".into())),
            BasisIndex::Barred(a) if (1..=m).contains(&a) => Ok(off + a - 1),
            BasisIndex::Plain(a) if (1..=m).contains(&a) => Ok(off + m + a - 1),
            BasisIndex::Barred(a) if (m + 1..=m + n).contains(&a) => Ok(off + m + a - 1),
            BasisIndex::Plain(a) if (m + 1..=m + n).contains(&a) => Ok(off + m + n + a - 1),
            BasisIndex::Barred(a) | BasisIndex::Plain(a) => Err(out_of_range(a)),
        }
    }

    /// `|v_i|`.
    pub fn parity(&self, i: BasisIndex) -> usize {
        usize::from(i.abs() > self.m)
    }

    /// Parities of the ordered basis.
    pub fn parities(&self) -> Vec<usize> {
        self.basis().into_iter().map(|i| self.parity(i)).collect()
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(m={}, n={}, {})", self.m, self.n, self.mode)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisIndex {
    Zero,
    Plain(usize),
    Barred(usize),
}

impl BasisIndex {
    /// `||i||`.
    pub fn abs(&self) -> usize {
        match *self {
            BasisIndex::Zero => 0,
            BasisIndex::Plain(a) | BasisIndex::Barred(a) => a,
        }
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisIndex::Zero => write!(f, "0"),
            BasisIndex::Plain(a) => write!(f, "{a}"),
            BasisIndex::Barred(a) => write!(f, "{a}~"),
        }
    }
}

impl FromStr for BasisIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (digits, barred) = match s.strip_suffix('~') {
            Some(rest) => (rest, true),
            None => (s, false),
        };
        let a: usize = digits.parse().map_err(|_| Error::Parse(format!("bad basis index {s:?}")))?;
        match (a, barred) {
            (0, false) => Ok(BasisIndex::Zero),
            (0, true) => Err(Error::Parse("0 has no barred form".into())),
            (a, true) => Ok(BasisIndex::Barred(a)),
            (a, false) => Ok(BasisIndex::Plain(a)),
        }
    }
}

/// `<v_i, v_j>`.
pub fn form(p: &Params, i: BasisIndex, j: BasisIndex) -> i64 {
    use BasisIndex::*;
    match (i, j) {
        (Zero, Zero) => 1,
        (Barred(a), Plain(b)) if a == b => {
            if a > p.m {
                -1
            } else {
                1
            }
        }
        (Plain(a), Barred(b)) if a == b => 1,
        _ => 0,
    }
}

pub fn gram_matrix(p: &Params) -> SparseMatrix {
    let basis = p.basis();
    let mut j = SparseMatrix::new(basis.len(), basis.len());
    for (r, &a) in basis.iter().enumerate() {
        for (c, &b) in basis.iter().enumerate() {
            let v = form(p, a, b);
            if v != 0 {
                j.set(r, c, int(v));
            }
        }
    }
    j
}

/// The index `j` and sign `ε` with `v_i^* = ε v_j`.
pub fn right_dual(p: &Params, i: BasisIndex) -> (BasisIndex, i64) {
    let j = match i {
        BasisIndex::Zero => BasisIndex::Zero,
        BasisIndex::Plain(a) => BasisIndex::Barred(a),
        BasisIndex::Barred(a) => BasisIndex::Plain(a),
    };
    (j, form(p, i, j))
}

/// A parity-homogeneous matrix over the ordered basis of `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElement {
    pub matrix: SparseMatrix,
    pub parity: usize,
}

impl LieElement {
    /// Tags `matrix` with its parity; the zero matrix is even.
    pub fn new(p: &Params, matrix: SparseMatrix) -> Result<Self> {
        let par = p.parities();
        if matrix.rows() != par.len() || matrix.cols() != par.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for a space of dimension {}",
                matrix.rows(),
                matrix.cols(),
                par.len()
            )));
        }
        let mut parity = None;
        for (r, c, _) in matrix.iter() {
            let q = (par[r] + par[c]) % 2;
            match parity {
                None => parity = Some(q),
                Some(x) if x != q => return Err(Error::NonHomogeneous),
                _ => {}
            }
        }
        Ok(Self { matrix, parity: parity.unwrap_or(0) })
    }

    fn from_entries(p: &Params, entries: &[(BasisIndex, BasisIndex, i64)]) -> Self {
        let dim = p.dim();
        let mut m = SparseMatrix::new(dim, dim);
        for &(r, c, v) in entries {
            let (r, c) = (p.position(r).expect("valid row"), p.position(c).expect("valid column"));
            m.add_to(r, c, int(v));
        }
        Self::new(p, m).expect("generators are homogeneous")
    }
}

/// One matrix per free parameter of the block description of `osp(V)`.
pub fn osp_basis(p: &Params) -> Vec<LieElement> {
    use BasisIndex::{Barred, Plain, Zero};
    let (m, n) = (p.m, p.n);
    let odd = p.mode == Mode::Odd;
    let mut gens: Vec<Vec<(BasisIndex, BasisIndex, i64)>> = Vec::new();
    let large = |r: usize| m + r;

    if odd {
        for k in 1..=m {
            gens.push(vec![(Plain(k), Zero, 1), (Zero, Barred(k), -1)]);
            gens.push(vec![(Barred(k), Zero, 1), (Zero, Plain(k), -1)]);
        }
        for r in 1..=n {
            gens.push(vec![(Zero, Barred(large(r)), 1), (Plain(large(r)), Zero, -1)]);
            gens.push(vec![(Zero, Plain(large(r)), 1), (Barred(large(r)), Zero, 1)]);
        }
    }
    for k in 1..=m {
        for l in 1..=m {
            gens.push(vec![(Plain(k), Plain(l), 1), (Barred(l), Barred(k), -1)]);
        }
    }
    for k in 1..=m {
        for l in k + 1..=m {
            gens.push(vec![(Barred(k), Plain(l), 1), (Barred(l), Plain(k), -1)]);
            gens.push(vec![(Plain(k), Barred(l), 1), (Plain(l), Barred(k), -1)]);
        }
    }
    for r in 1..=n {
        for q in 1..=n {
            gens.push(vec![(Plain(large(r)), Plain(large(q)), 1), (Barred(large(q)), Barred(large(r)), -1)]);
        }
    }
    for r in 1..=n {
        for q in r..=n {
            let (lr, lq) = (large(r), large(q));
            gens.push(vec![(Barred(lr), Plain(lq), 1), (Barred(lq), Plain(lr), 1)]);
            gens.push(vec![(Plain(lr), Barred(lq), 1), (Plain(lq), Barred(lr), 1)]);
        }
    }
    for k in 1..=m {
        for r in 1..=n {
            let lr = large(r);
            gens.push(vec![(Plain(k), Plain(lr), 1), (Barred(lr), Barred(k), 1)]);
            gens.push(vec![(Barred(k), Plain(lr), 1), (Barred(lr), Plain(k), 1)]);
            gens.push(vec![(Plain(k), Barred(lr), 1), (Plain(lr), Barred(k), -1)]);
            gens.push(vec![(Plain(lr), Plain(k), 1), (Barred(k), Barred(lr), -1)]);
        }
    }
    gens.iter().map(|g| LieElement::from_entries(p, g)).collect()
}

/// Expected `dim osp(V)`.
pub fn osp_dim(p: &Params) -> usize {
    let (m, n) = (p.m, p.n);
    match p.mode {
        Mode::Odd => m * (2 * m + 1) + n * (2 * n + 1) + 2 * n * (2 * m + 1),
        Mode::Even => m * (2 * m).saturating_sub(1) + n * (2 * n + 1) + 4 * m * n,
    }
}

/// `<Xv, w> + (-1)^{|X||v|} <v, Xw> = 0` for all basis vectors `v`, `w`.
pub fn check_form_invariance(x: &LieElement, p: &Params) -> Result<bool> {
    let x = LieElement::new(p, x.matrix.clone())?;
    let j = gram_matrix(p);
    let left = x.matrix.transpose().mul(&j);
    let right = j.mul(&x.matrix);
    for (r, par) in p.parities().into_iter().enumerate() {
        let sign = scalar::sign(x.parity * par);
        for c in 0..p.dim() {
            if !(left.get(r, c) + &sign * right.get(r, c)).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Superbracket `[X, Y] = XY - (-1)^{|X||Y|} YX`.
pub fn bracket(x: &LieElement, y: &LieElement) -> LieElement {
    let xy = x.matrix.mul(&y.matrix);
    let yx = y.matrix.mul(&x.matrix).scale(&scalar::sign(x.parity * y.parity));
    LieElement { matrix: xy.sub(&yx), parity: (x.parity + y.parity) % 2 }
}

/// Images `ι(E_ij)` of the elementary matrices of `gl(m|n)`, `i` major.
pub fn gl_embedding(p: &Params) -> Vec<LieElement> {
    let k = p.m + p.n;
    let mut out = Vec::with_capacity(k * k);
    for i in 1..=k {
        for j in 1..=k {
            out.push(gl_element(p, i, j));
        }
    }
    out
}

/// `ι(E_ij)`: `E_ij` on `W_∧` and the negative super-transpose on `W_∨`.
pub fn gl_element(p: &Params, i: usize, j: usize) -> LieElement {
    let (pi, pj) = (p.parity(BasisIndex::Plain(i)), p.parity(BasisIndex::Plain(j)));
    let dual_sign = -scalar_sign_i64((pi + pj) * pj);
    LieElement::from_entries(
        p,
        &[(BasisIndex::Plain(i), BasisIndex::Plain(j), 1), (BasisIndex::Barred(j), BasisIndex::Barred(i), dual_sign)],
    )
}

fn scalar_sign_i64(exponent: usize) -> i64 {
    if exponent.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Coordinates of `x` in `span(basis)`, if it lies there.
pub fn span_coordinates(x: &LieElement, basis: &[LieElement]) -> Option<Vec<Scalar>> {
    let cols = basis.len();
    let entries = x.matrix.rows() * x.matrix.cols();
    let mut system = SparseMatrix::new(entries, cols);
    for (k, b) in basis.iter().enumerate() {
        for (idx, v) in b.matrix.flatten() {
            system.set(idx, k, v);
        }
    }
    let rhs: SparseVector = x.matrix.flatten();
    let sol = solve(&system, &rhs)?;
    Some((0..cols).map(|k| sol.get(&k).cloned().unwrap_or_else(Scalar::zero)).collect())
}

pub fn in_span(x: &LieElement, basis: &[LieElement]) -> bool {
    span_coordinates(x, basis).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_params() -> Vec<Params> {
        let mut out = Vec::new();
        for m in 0..=2 {
            for n in 0..=2 {
                for mode in [Mode::Even, Mode::Odd] {
                    out.push(Params::new(m, n, mode));
                }
            }
        }
        out
    }

    #[test]
    fn basis_order_and_literals() {
        let p = Params::new(1, 1, Mode::Odd);
        let text: Vec<String> = p.basis().iter().map(ToString::to_string).collect();
        assert_eq!(text, ["0", "1~", "1", "2~", "2"]);
        for (k, i) in p.basis().into_iter().enumerate() {
            assert_eq!(p.position(i).unwrap(), k);
            assert_eq!(i.to_string().parse::<BasisIndex>().unwrap(), i);
        }
        assert_eq!(p.parities(), [0, 0, 0, 1, 1]);
        assert!(Params::new(1, 1, Mode::Even).position(BasisIndex::Zero).is_err());
        assert_eq!(p.delta(), int(1));
        assert_eq!(Params::new(1, 1, Mode::Even).delta(), int(0));
    }

    #[test]
    fn gram_examples() {
        let j = gram_matrix(&Params::new(0, 1, Mode::Odd));
        assert_eq!(j, SparseMatrix::from_i64(&[&[1, 0, 0], &[0, 0, -1], &[0, 1, 0]]));
        let j = gram_matrix(&Params::new(1, 0, Mode::Even));
        assert_eq!(j, SparseMatrix::from_i64(&[&[0, 1], &[1, 0]]));
    }

    #[test]
    fn gram_is_supersymmetric_and_nondegenerate() {
        for p in all_params() {
            let j = gram_matrix(&p);
            let par = p.parities();
            for (r, c, v) in j.iter() {
                assert_eq!(par[r], par[c]);
                let sign = if par[r] == 1 { -1 } else { 1 };
                assert_eq!(j.get(c, r), v * int(sign));
            }
            assert_eq!(crate::linalg::rank(&j), p.dim());
        }
    }

    #[test]
    fn right_duals() {
        for p in all_params() {
            for i in p.basis() {
                let (j, eps) = right_dual(&p, i);
                assert_eq!(form(&p, i, j) * eps, 1);
                for k in p.basis() {
                    if k != i {
                        assert_eq!(form(&p, k, j), 0);
                    }
                }
            }
        }
        let p = Params::new(1, 1, Mode::Even);
        assert_eq!(right_dual(&p, BasisIndex::Barred(2)), (BasisIndex::Plain(2), -1));
        assert_eq!(right_dual(&p, BasisIndex::Plain(2)), (BasisIndex::Barred(2), 1));
        assert_eq!(right_dual(&p, BasisIndex::Barred(1)), (BasisIndex::Plain(1), 1));
    }

    #[test]
    fn osp_dimensions() {
        assert_eq!(osp_basis(&Params::new(1, 1, Mode::Odd)).len(), 12);
        assert_eq!(osp_basis(&Params::new(1, 0, Mode::Even)).len(), 1);
        for p in all_params() {
            let basis = osp_basis(&p);
            assert_eq!(basis.len(), osp_dim(&p), "{p}");
            let flat: Vec<SparseVector> = basis.iter().map(|x| x.matrix.flatten()).collect();
            let mat = SparseMatrix::from_rows(p.dim() * p.dim(), flat);
            assert_eq!(crate::linalg::rank(&mat), basis.len());
        }
    }

    #[test]
    fn form_invariance() {
        for p in all_params() {
            for x in osp_basis(&p).iter().chain(gl_embedding(&p).iter()) {
                assert!(check_form_invariance(x, &p).unwrap(), "{p} {x:?}");
            }
        }
        let p = Params::new(1, 1, Mode::Odd);
        let zero = LieElement::new(&p, SparseMatrix::new(5, 5)).unwrap();
        assert!(check_form_invariance(&zero, &p).unwrap());
        let mut e00 = SparseMatrix::new(5, 5);
        e00.set(0, 0, int(1));
        assert!(!check_form_invariance(&LieElement::new(&p, e00).unwrap(), &p).unwrap());
        let mut mixed = SparseMatrix::new(5, 5);
        mixed.set(0, 0, int(1));
        mixed.set(0, 3, int(1));
        assert_eq!(LieElement::new(&p, mixed), Err(Error::NonHomogeneous));
    }

    #[test]
    fn bracket_closure() {
        for p in all_params() {
            let basis = osp_basis(&p);
            for x in &basis {
                for y in &basis {
                    assert!(in_span(&bracket(x, y), &basis), "{p}");
                }
            }
            for g in gl_embedding(&p) {
                assert!(in_span(&g, &basis));
            }
        }
    }

    #[test]
    fn gl_embedding_is_a_homomorphism() {
        for p in all_params() {
            let k = p.m + p.n;
            let par = |a: usize| p.parity(BasisIndex::Plain(a));
            for (i, j, a, b) in (1..=k)
                .flat_map(|i| (1..=k).flat_map(move |j| (1..=k).flat_map(move |a| (1..=k).map(move |b| (i, j, a, b)))))
            {
                let lhs = bracket(&gl_element(&p, i, j), &gl_element(&p, a, b));
                let mut rhs = SparseMatrix::new(p.dim(), p.dim());
                if j == a {
                    rhs = rhs.add(&gl_element(&p, i, b).matrix);
                }
                if b == i {
                    let sign = scalar::sign(((par(i) + par(j)) * (par(a) + par(b))) % 2);
                    rhs = rhs.sub(&gl_element(&p, a, j).matrix.scale(&sign));
                }
                assert_eq!(lhs.matrix, rhs, "{p} [E{i}{j}, E{a}{b}]");
            }
        }
    }

    #[test]
    fn gl_embedding_blocks() {
        let p = Params::new(1, 1, Mode::Odd);
        let gl = gl_embedding(&p);
        assert_eq!(gl.len(), 4);
        let plain: Vec<usize> = (1..=2).map(|a| p.position(BasisIndex::Plain(a)).unwrap()).collect();
        for x in &gl {
            for (r, c, _) in x.matrix.iter() {
                assert_eq!(plain.contains(&r), plain.contains(&c));
            }
        }
        for i in 1..=2 {
            for j in 1..=2 {
                let x = gl_element(&p, i, j);
                for k in 1..=2 {
                    let col = p.position(BasisIndex::Barred(k)).unwrap();
                    let (pi, pj) = (p.parity(BasisIndex::Plain(i)), p.parity(BasisIndex::Plain(j)));
                    let expected = if i == k { -scalar_sign_i64((pi + pj) * pj) } else { 0 };
                    let row = p.position(BasisIndex::Barred(j)).unwrap();
                    assert_eq!(x.matrix.get(row, col), int(expected));
                }
            }
        }
    }
}
