//! Finite-dimensional involutive algebras over an exact scalar ring,
//! declared by structure constants and validated eagerly, together with the
//! bar construction evaluating category morphisms on tensor powers, and its
//! monoid-level analogue on tuples of words in a free involutive monoid.

use crate::category::{Label, LabelledFiberMap};
use crate::linalg::{FreeModuleVector, SparseMatrix};
use crate::scalar::{Scalar, ScalarError, ScalarRing};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("product is not associative on ({0}, {1}, {2})")]
    NonAssociative(String, String, String),
    #[error("product is not commutative on ({0}, {1})")]
    NotCommutative(String, String),
    #[error("unit fails on basis element {0} ({1} multiplication)")]
    UnitFailure(String, &'static str),
    #[error("involution does not square to the identity on {0}")]
    InvolutionNotInvolutive(String),
    #[error("involution is not an anti-homomorphism on ({0}, {1})")]
    InvolutionNotAntihomomorphism(String, String),
    #[error("involution image of {0} is missing")]
    MissingInvolution(String),
    #[error("no unit declared")]
    MissingUnit,
    #[error("line {0}: {1}")]
    Parse(usize, String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A unital associative algebra with an involution, given by structure
/// constants on a finite basis. All invariants (associativity, unit,
/// involutive anti-homomorphism) are checked at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutiveAlgebra {
    ring: ScalarRing,
    dim: usize,
    basis_names: Vec<String>,
    mul_table: Vec<FreeModuleVector>, // index i * dim + j holds e_i * e_j
    unit: FreeModuleVector,
    involution: Vec<FreeModuleVector>, // image of e_i
}

impl InvolutiveAlgebra {
    pub fn new(
        ring: ScalarRing,
        basis_names: Vec<String>,
        mul_table: Vec<FreeModuleVector>,
        unit: FreeModuleVector,
        involution: Vec<FreeModuleVector>,
    ) -> Result<Self, AlgebraError> {
        let dim = basis_names.len();
        assert_eq!(mul_table.len(), dim * dim, "multiplication table size mismatch");
        assert_eq!(involution.len(), dim, "involution table size mismatch");
        assert!(mul_table.iter().all(|v| v.dimension() == dim));
        assert!(involution.iter().all(|v| v.dimension() == dim));
        assert_eq!(unit.dimension(), dim);
        let algebra = InvolutiveAlgebra { ring, dim, basis_names, mul_table, unit, involution };
        algebra.validate()?;
        Ok(algebra)
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        let name = |i: usize| self.basis_names[i].clone();
        for i in 0..self.dim {
            let e = FreeModuleVector::basis(self.dim, i, &self.ring);
            if self.mul_vec(&self.unit, &e) != e {
                return Err(AlgebraError::UnitFailure(name(i), "left"));
            }
            if self.mul_vec(&e, &self.unit) != e {
                return Err(AlgebraError::UnitFailure(name(i), "right"));
            }
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let jk = self.mul_basis(j, k);
                    let ij = self.mul_basis(i, j).clone();
                    let left = self.mul_vec(&ij, &FreeModuleVector::basis(self.dim, k, &self.ring));
                    let right =
                        self.mul_vec(&FreeModuleVector::basis(self.dim, i, &self.ring), jk);
                    if left != right {
                        return Err(AlgebraError::NonAssociative(name(i), name(j), name(k)));
                    }
                }
            }
        }
        for i in 0..self.dim {
            let twice = self.involution_vec(&self.involution[i]);
            if twice != FreeModuleVector::basis(self.dim, i, &self.ring) {
                return Err(AlgebraError::InvolutionNotInvolutive(name(i)));
            }
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let lhs = self.involution_vec(self.mul_basis(i, j));
                let rhs = self.mul_vec(&self.involution[j], &self.involution[i]);
                if lhs != rhs {
                    return Err(AlgebraError::InvolutionNotAntihomomorphism(name(i), name(j)));
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &ScalarRing {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_name(&self, i: usize) -> &str {
        &self.basis_names[i]
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn unit(&self) -> &FreeModuleVector {
        &self.unit
    }

    pub fn basis_vector(&self, i: usize) -> FreeModuleVector {
        FreeModuleVector::basis(self.dim, i, &self.ring)
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &FreeModuleVector {
        &self.mul_table[i * self.dim + j]
    }

    pub fn mul_vec(&self, a: &FreeModuleVector, b: &FreeModuleVector) -> FreeModuleVector {
        let mut out = FreeModuleVector::zero(self.dim);
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                let coeff = self.ring.mul(x, y);
                out = out.add_scaled(self.mul_basis(i, j), &coeff, &self.ring);
            }
        }
        out
    }

    pub fn involution_basis(&self, i: usize) -> &FreeModuleVector {
        &self.involution[i]
    }

    pub fn involution_vec(&self, a: &FreeModuleVector) -> FreeModuleVector {
        let mut out = FreeModuleVector::zero(self.dim);
        for (i, x) in a.iter() {
            out = out.add_scaled(&self.involution[i], x, &self.ring);
        }
        out
    }

    pub fn involution_matrix(&self) -> SparseMatrix {
        let mut m = SparseMatrix::zero(self.dim, self.dim);
        for (c, img) in self.involution.iter().enumerate() {
            for (r, v) in img.iter() {
                m.set(r, c, v.clone(), &self.ring);
            }
        }
        m
    }

    pub fn has_trivial_involution(&self) -> bool {
        (0..self.dim).all(|i| self.involution[i] == self.basis_vector(i))
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.mul_basis(i, j) == self.mul_basis(j, i)))
    }

    /// Parse the line-oriented declarative format:
    ///
    /// ```text
    /// ring Q
    /// basis e x
    /// unit = e
    /// mul x x = 2*e + -1*x
    /// inv x = -1*x
    /// ```
    ///
    /// Products that are not declared default to zero; every basis element
    /// must receive an involution image. Lines starting with `#` are
    /// comments.
    pub fn parse(text: &str) -> Result<Self, AlgebraError> {
        let mut ring: Option<ScalarRing> = None;
        let mut names: Vec<String> = Vec::new();
        let mut mul_entries: Vec<(usize, usize, FreeModuleVector)> = Vec::new();
        let mut unit: Option<FreeModuleVector> = None;
        let mut inv_entries: Vec<(usize, FreeModuleVector)> = Vec::new();

        for (lineno, raw) in text.lines().enumerate() {
            let no = lineno + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let perr = |msg: &str| AlgebraError::Parse(no, msg.to_string());
            let mut words = line.split_whitespace();
            match words.next() {
                Some("ring") => {
                    let tag = words.next().ok_or_else(|| perr("missing ring name"))?;
                    let r = match tag {
                        "Fp" => {
                            let p = words
                                .next()
                                .ok_or_else(|| perr("Fp needs a prime"))?
                                .parse::<u64>()
                                .map_err(|_| perr("bad prime"))?;
                            ScalarRing::prime_field(p)?
                        }
                        other => ScalarRing::parse_name(other)
                            .map_err(|_| perr("ring must be Z, Q, F<p> or `Fp p`"))?,
                    };
                    ring = Some(r);
                }
                Some("basis") => {
                    names = words.map(|w| w.to_string()).collect();
                    if names.is_empty() {
                        return Err(perr("empty basis"));
                    }
                }
                Some("unit") => {
                    let ring = ring.ok_or_else(|| perr("ring must come first"))?;
                    let rhs = line.split_once('=').ok_or_else(|| perr("missing `=`"))?.1;
                    unit = Some(parse_sum(rhs, &names, &ring).map_err(|m| perr(&m))?);
                }
                Some("mul") => {
                    let ring = ring.ok_or_else(|| perr("ring must come first"))?;
                    let a = words.next().ok_or_else(|| perr("mul needs two factors"))?;
                    let b = words.next().ok_or_else(|| perr("mul needs two factors"))?;
                    let i = basis_index(a, &names).map_err(|m| perr(&m))?;
                    let j = basis_index(b, &names).map_err(|m| perr(&m))?;
                    let rhs = line.split_once('=').ok_or_else(|| perr("missing `=`"))?.1;
                    let v = parse_sum(rhs, &names, &ring).map_err(|m| perr(&m))?;
                    mul_entries.push((i, j, v));
                }
                Some("inv") => {
                    let ring = ring.ok_or_else(|| perr("ring must come first"))?;
                    let a = words.next().ok_or_else(|| perr("inv needs an element"))?;
                    let i = basis_index(a, &names).map_err(|m| perr(&m))?;
                    let rhs = line.split_once('=').ok_or_else(|| perr("missing `=`"))?.1;
                    let v = parse_sum(rhs, &names, &ring).map_err(|m| perr(&m))?;
                    inv_entries.push((i, v));
                }
                Some(other) => return Err(perr(&format!("unknown directive `{other}`"))),
                None => unreachable!(),
            }
        }

        let ring = ring.ok_or_else(|| AlgebraError::Parse(0, "missing ring line".into()))?;
        let dim = names.len();
        if dim == 0 {
            return Err(AlgebraError::Parse(0, "missing basis line".into()));
        }
        let mut mul_table = vec![FreeModuleVector::zero(dim); dim * dim];
        for (i, j, v) in mul_entries {
            mul_table[i * dim + j] = v;
        }
        let unit = unit.ok_or(AlgebraError::MissingUnit)?;
        let mut involution = vec![None; dim];
        for (i, v) in inv_entries {
            involution[i] = Some(v);
        }
        let involution: Vec<FreeModuleVector> = involution
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| AlgebraError::MissingInvolution(names[i].clone())))
            .collect::<Result<_, _>>()?;
        InvolutiveAlgebra::new(ring, names, mul_table, unit, involution)
    }

    /// Canonical text form: ring, basis, unit, the nonzero products in
    /// basis order, then all involution images.
    pub fn canonical_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("ring {}\n", self.ring.name()));
        out.push_str(&format!("basis {}\n", self.basis_names.join(" ")));
        out.push_str(&format!("unit = {}\n", self.format_sum(&self.unit)));
        for i in 0..self.dim {
            for j in 0..self.dim {
                let v = self.mul_basis(i, j);
                if !v.is_zero() {
                    out.push_str(&format!(
                        "mul {} {} = {}\n",
                        self.basis_names[i],
                        self.basis_names[j],
                        self.format_sum(v)
                    ));
                }
            }
        }
        for i in 0..self.dim {
            out.push_str(&format!(
                "inv {} = {}\n",
                self.basis_names[i],
                self.format_sum(&self.involution[i])
            ));
        }
        out
    }

    fn format_sum(&self, v: &FreeModuleVector) -> String {
        if v.is_zero() {
            return "0".to_string();
        }
        v.iter()
            .map(|(i, c)| {
                if self.ring.is_one(c) {
                    self.basis_names[i].clone()
                } else {
                    format!("{c}*{}", self.basis_names[i])
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn basis_index(name: &str, names: &[String]) -> Result<usize, String> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| format!("unknown basis element `{name}`"))
}

fn parse_sum(rhs: &str, names: &[String], ring: &ScalarRing) -> Result<FreeModuleVector, String> {
    let rhs = rhs.trim();
    let mut out = FreeModuleVector::zero(names.len());
    if rhs == "0" {
        return Ok(out);
    }
    for term in rhs.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return Err("empty term".to_string());
        }
        let (coeff, name) = match term.split_once('*') {
            Some((c, n)) => {
                let c = ring.parse(c.trim()).map_err(|e| e.to_string())?;
                (c, n.trim())
            }
            None => {
                if let Some(stripped) = term.strip_prefix('-') {
                    (ring.from_i64(-1), stripped.trim())
                } else {
                    (ring.one(), term)
                }
            }
        };
        let i = basis_index(name, names)?;
        let cur = out.get(i).cloned().unwrap_or_else(|| ring.zero());
        out.set(i, ring.add(&cur, &coeff), ring);
    }
    Ok(out)
}

/// A finite group presented by its multiplication table.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<usize>, // i * order + j
    names: Vec<String>,
}

impl FiniteGroup {
    pub fn new(mul: Vec<Vec<usize>>, names: Vec<String>) -> Self {
        let order = names.len();
        assert_eq!(mul.len(), order);
        assert!(mul.iter().all(|row| row.len() == order));
        let flat: Vec<usize> = mul.into_iter().flatten().collect();
        let group = FiniteGroup { order, mul: flat, names };
        // sanity: associativity, identity, inverses
        let e = group.identity();
        for i in 0..order {
            assert_eq!(group.mul(e, i), i);
            assert_eq!(group.mul(i, e), i);
            assert!((0..order).any(|j| group.mul(i, j) == e));
            for j in 0..order {
                for k in 0..order {
                    assert_eq!(group.mul(group.mul(i, j), k), group.mul(i, group.mul(j, k)));
                }
            }
        }
        group
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let mul = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let names = (0..n).map(|i| if i == 0 { "e".to_string() } else { format!("g{i}") }).collect();
        FiniteGroup::new(mul, names)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mul[i * self.order + j]
    }

    pub fn identity(&self) -> usize {
        (0..self.order)
            .find(|&e| (0..self.order).all(|j| self.mul(e, j) == j && self.mul(j, e) == j))
            .expect("group has an identity")
    }

    pub fn inverse(&self, i: usize) -> usize {
        let e = self.identity();
        (0..self.order).find(|&j| self.mul(i, j) == e).expect("group has inverses")
    }
}

/// The group algebra k[G] with the involution g -> g^{-1}.
pub fn group_algebra(ring: ScalarRing, group: &FiniteGroup) -> Result<InvolutiveAlgebra, AlgebraError> {
    let d = group.order();
    let mut mul_table = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            mul_table.push(FreeModuleVector::basis(d, group.mul(i, j), &ring));
        }
    }
    let unit = FreeModuleVector::basis(d, group.identity(), &ring);
    let involution =
        (0..d).map(|i| FreeModuleVector::basis(d, group.inverse(i), &ring)).collect();
    InvolutiveAlgebra::new(ring, group.names.clone(), mul_table, unit, involution)
}

/// The matrix algebra M_n(A) with involution transpose-of-entrywise-bar.
pub fn matrix_algebra(inner: &InvolutiveAlgebra, n: usize) -> Result<InvolutiveAlgebra, AlgebraError> {
    assert!(n >= 1);
    let di = inner.dim();
    let ring = *inner.ring();
    let d = n * n * di;
    let index = |r: usize, c: usize, b: usize| (r * n + c) * di + b;
    let mut names = Vec::with_capacity(d);
    for r in 0..n {
        for c in 0..n {
            for b in 0..di {
                if di == 1 {
                    names.push(format!("E{r}{c}"));
                } else {
                    names.push(format!("E{r}{c}.{}", inner.basis_name(b)));
                }
            }
        }
    }
    let mut mul_table = vec![FreeModuleVector::zero(d); d * d];
    for r in 0..n {
        for c in 0..n {
            for b in 0..di {
                for r2 in 0..n {
                    for c2 in 0..n {
                        for b2 in 0..di {
                            if c != r2 {
                                continue;
                            }
                            let mut v = FreeModuleVector::zero(d);
                            for (k, coeff) in inner.mul_basis(b, b2).iter() {
                                v.set(index(r, c2, k), coeff.clone(), &ring);
                            }
                            mul_table[index(r, c, b) * d + index(r2, c2, b2)] = v;
                        }
                    }
                }
            }
        }
    }
    let mut unit = FreeModuleVector::zero(d);
    for r in 0..n {
        for (k, coeff) in inner.unit().iter() {
            unit.set(index(r, r, k), coeff.clone(), &ring);
        }
    }
    let mut involution = vec![FreeModuleVector::zero(d); d];
    for r in 0..n {
        for c in 0..n {
            for b in 0..di {
                let mut v = FreeModuleVector::zero(d);
                for (k, coeff) in inner.involution_basis(b).iter() {
                    v.set(index(c, r, k), coeff.clone(), &ring);
                }
                involution[index(r, c, b)] = v;
            }
        }
    }
    InvolutiveAlgebra::new(ring, names, mul_table, unit, involution)
}

/// k[x]/(x^n) with the trivial involution. Basis e, x, x2, ...
pub fn truncated_polynomial(ring: ScalarRing, n: usize) -> Result<InvolutiveAlgebra, AlgebraError> {
    truncated_polynomial_with_sign(ring, n, false)
}

/// k[x]/(x^n) with the involution x -> -x.
pub fn truncated_polynomial_signed(ring: ScalarRing, n: usize) -> Result<InvolutiveAlgebra, AlgebraError> {
    truncated_polynomial_with_sign(ring, n, true)
}

fn truncated_polynomial_with_sign(
    ring: ScalarRing,
    n: usize,
    negate_variable: bool,
) -> Result<InvolutiveAlgebra, AlgebraError> {
    assert!(n >= 1);
    let names = (0..n)
        .map(|k| match k {
            0 => "e".to_string(),
            1 => "x".to_string(),
            k => format!("x{k}"),
        })
        .collect();
    let mut mul_table = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let mut v = FreeModuleVector::zero(n);
            if a + b < n {
                v.set(a + b, ring.one(), &ring);
            }
            mul_table.push(v);
        }
    }
    let unit = FreeModuleVector::basis(n, 0, &ring);
    let involution = (0..n)
        .map(|k| {
            let mut v = FreeModuleVector::zero(n);
            let sign = if negate_variable && k % 2 == 1 { ring.from_i64(-1) } else { ring.one() };
            v.set(k, sign, &ring);
            v
        })
        .collect();
    InvolutiveAlgebra::new(ring, names, mul_table, unit, involution)
}

/// A commutative algebra from an explicit table; rejects non-commutative
/// input up front.
pub fn commutative_with_involution(
    ring: ScalarRing,
    basis_names: Vec<String>,
    mul_table: Vec<FreeModuleVector>,
    unit: FreeModuleVector,
    involution: Vec<FreeModuleVector>,
) -> Result<InvolutiveAlgebra, AlgebraError> {
    let algebra = InvolutiveAlgebra::new(ring, basis_names, mul_table, unit, involution)?;
    for i in 0..algebra.dim() {
        for j in 0..algebra.dim() {
            if algebra.mul_basis(i, j) != algebra.mul_basis(j, i) {
                return Err(AlgebraError::NotCommutative(
                    algebra.basis_name(i).to_string(),
                    algebra.basis_name(j).to_string(),
                ));
            }
        }
    }
    Ok(algebra)
}

/// An element of A^{(x) slots}, stored over the mixed-radix basis with slot
/// 0 least significant: the word (b_0, .., b_k) has index sum b_s * d^s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor {
    slots: usize,
    value: FreeModuleVector,
}

impl Tensor {
    pub fn zero(dim: usize, slots: usize) -> Self {
        Tensor { slots, value: FreeModuleVector::zero(dim.pow(slots as u32)) }
    }

    pub fn from_vector(slots: usize, value: FreeModuleVector) -> Self {
        Tensor { slots, value }
    }

    /// The elementary tensor of the given basis word with coefficient one.
    pub fn elementary(dim: usize, word: &[usize], ring: &ScalarRing) -> Self {
        let mut t = Tensor::zero(dim, word.len());
        t.value.set(encode_word(dim, word), ring.one(), ring);
        t
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn value(&self) -> &FreeModuleVector {
        &self.value
    }

    pub fn scale(&self, c: &Scalar, ring: &ScalarRing) -> Self {
        Tensor { slots: self.slots, value: self.value.scale(c, ring) }
    }

    pub fn add(&self, other: &Tensor, ring: &ScalarRing) -> Self {
        assert_eq!(self.slots, other.slots);
        Tensor { slots: self.slots, value: self.value.add(&other.value, ring) }
    }

    /// Concatenation of slots: (a (x) b) with a's slots least significant.
    pub fn product(a: &Tensor, b: &Tensor, dim: usize, ring: &ScalarRing) -> Tensor {
        let slots = a.slots + b.slots;
        let mut out = Tensor::zero(dim, slots);
        let shift = dim.pow(a.slots as u32);
        for (ia, ca) in a.value.iter() {
            for (ib, cb) in b.value.iter() {
                let idx = ia + ib * shift;
                let coeff = ring.mul(ca, cb);
                let cur = out.value.get(idx).cloned().unwrap_or_else(|| ring.zero());
                out.value.set(idx, ring.add(&cur, &coeff), ring);
            }
        }
        out
    }
}

pub fn encode_word(dim: usize, word: &[usize]) -> usize {
    let mut idx = 0usize;
    let mut stride = 1usize;
    for &b in word {
        assert!(b < dim);
        idx += b * stride;
        stride *= dim;
    }
    idx
}

pub fn decode_word(dim: usize, slots: usize, mut idx: usize) -> Vec<usize> {
    let mut word = Vec::with_capacity(slots);
    for _ in 0..slots {
        word.push(idx % dim);
        idx /= dim;
    }
    word
}

/// Evaluate a morphism under the bar construction: slot j of the output is
/// the ordered product over the fiber of j of the inputs, conjugated where
/// the fiber label is negative; an empty fiber yields the unit.
pub fn bar_evaluate(algebra: &InvolutiveAlgebra, f: &LabelledFiberMap, x: &Tensor) -> Tensor {
    let n_slots = (f.source_rank() + 1) as usize;
    let m_slots = (f.target_rank() + 1) as usize;
    assert_eq!(x.slots(), n_slots, "tensor arity mismatch");
    let ring = algebra.ring();
    let d = algebra.dim();
    let mut out = Tensor::zero(d, m_slots);
    for (idx, coeff) in x.value().iter() {
        let word = decode_word(d, n_slots, idx);
        // the ordered, possibly conjugated product for each output slot
        let slot_values: Vec<FreeModuleVector> = (0..m_slots)
            .map(|j| {
                let mut acc = algebra.unit().clone();
                for (i, label) in f.fiber(j) {
                    let factor = match label {
                        Label::Pos => algebra.basis_vector(word[*i]),
                        Label::Neg => algebra.involution_basis(word[*i]).clone(),
                    };
                    acc = algebra.mul_vec(&acc, &factor);
                }
                acc
            })
            .collect();
        // expand the tensor product of the slot values
        let mut partial: Vec<(usize, Scalar)> = vec![(0, coeff.clone())];
        let mut stride = 1usize;
        for slot in &slot_values {
            let mut next = Vec::with_capacity(partial.len() * slot.support_len());
            for (base, c) in &partial {
                for (b, v) in slot.iter() {
                    next.push((base + b * stride, ring.mul(c, v)));
                }
            }
            partial = next;
            stride *= d;
        }
        for (i, c) in partial {
            let cur = out.value.get(i).cloned().unwrap_or_else(|| ring.zero());
            out.value.set(i, ring.add(&cur, &c), ring);
        }
    }
    out
}

/// [`bar_evaluate`] on a morphism given in decomposed form.
pub fn bar_evaluate_decomposed(
    algebra: &InvolutiveAlgebra,
    f: &crate::category::DeltaHMorphism,
    x: &Tensor,
) -> Tensor {
    bar_evaluate(algebra, &f.to_fiber_map(), x)
}

/// The matrix of [`bar_evaluate`] on elementary tensors: a sparse
/// d^{m+1} x d^{n+1} matrix over the algebra's scalar ring. Build it once
/// per morphism when the same morphism is applied repeatedly.
pub fn bar_matrix(algebra: &InvolutiveAlgebra, f: &LabelledFiberMap) -> SparseMatrix {
    let d = algebra.dim();
    let n_slots = (f.source_rank() + 1) as usize;
    let m_slots = (f.target_rank() + 1) as usize;
    let cols = d.pow(n_slots as u32);
    let rows = d.pow(m_slots as u32);
    let ring = algebra.ring();
    let mut m = SparseMatrix::zero(rows, cols);
    for col in 0..cols {
        let word = decode_word(d, n_slots, col);
        let image = bar_evaluate(algebra, f, &Tensor::elementary(d, &word, ring));
        for (r, v) in image.value().iter() {
            m.set(r, col, v.clone(), ring);
        }
    }
    m
}

/// A word in the free involutive monoid on countably many generators; the
/// involution reverses the word and bars every letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InvolutiveWord(pub Vec<(usize, Label)>);

impl InvolutiveWord {
    pub fn unit() -> Self {
        InvolutiveWord(Vec::new())
    }

    pub fn letter(generator: usize, label: Label) -> Self {
        InvolutiveWord(vec![(generator, label)])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn involute(&self) -> Self {
        InvolutiveWord(self.0.iter().rev().map(|(g, l)| (*g, l.flip())).collect())
    }

    pub fn concat(&self, other: &InvolutiveWord) -> Self {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        InvolutiveWord(letters)
    }

    pub fn apply_label(&self, label: Label) -> Self {
        match label {
            Label::Pos => self.clone(),
            Label::Neg => self.involute(),
        }
    }
}

impl fmt::Display for InvolutiveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(g, l)| match l {
                Label::Pos => format!("x{}", g + 1),
                Label::Neg => format!("x{}~", g + 1),
            })
            .collect();
        write!(f, "{}", parts.join("."))
    }
}

/// The bar construction at the monoid level: the same slotwise formula with
/// concatenation in place of multiplication. The source [-1] corresponds to
/// the empty tuple of words.
pub fn bar_evaluate_monoid(f: &LabelledFiberMap, words: &[InvolutiveWord]) -> Vec<InvolutiveWord> {
    let n_slots = (f.source_rank() + 1) as usize;
    let m_slots = (f.target_rank() + 1) as usize;
    assert_eq!(words.len(), n_slots, "tuple arity mismatch");
    (0..m_slots)
        .map(|j| {
            let mut acc = InvolutiveWord::unit();
            for (i, label) in f.fiber(j) {
                acc = acc.concat(&words[*i].apply_label(*label));
            }
            acc
        })
        .collect()
}
