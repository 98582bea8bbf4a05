//! Degree-zero hyperoctahedral homology: the two-step resolution built from
//! hom-sets into [0] and [2] with the augmentation and difference maps, the
//! boundary sending a0 (x) a1 (x) a2 to a0 a1 a2 - a2 conj(a1) a0, the
//! quotient ring it presents, the ideal property of the relation span, and
//! the degree-zero product computed at chain level through the arity-2
//! block structure map.

use crate::algebra::{bar_evaluate, bar_matrix, InvolutiveAlgebra, Tensor};
use crate::category::{enumerate_hom, CategoryError, LabelledFiberMap, Perm};
use crate::linalg::{
    cokernel, column_rank_with_cap, image_basis, CokernelData, CokernelPresentation,
    FreeModuleVector, SparseMatrix, Subspace,
};
use crate::operads::{lambda, quotient_q, UnderCatString};
use crate::scalar::ScalarRing;
use std::collections::BTreeMap;

/// Index a hom-set in enumeration order.
pub fn hom_index(
    n: i32,
    m: i32,
    cap: u64,
) -> Result<(Vec<LabelledFiberMap>, BTreeMap<LabelledFiberMap, usize>), CategoryError> {
    let list = enumerate_hom(n, m, cap)?;
    let index = list.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
    Ok((list, index))
}

/// The augmentation row: one column per morphism [n] -> [0], every entry 1.
pub fn epsilon_matrix(n: i32, ring: &ScalarRing, cap: u64) -> Result<SparseMatrix, CategoryError> {
    let count = crate::category::hom_count(n, 0).expect("count fits") as usize;
    if count as u128 > cap as u128 {
        return Err(CategoryError::EnumerationCapExceeded { required: count as u128, cap });
    }
    let mut m = SparseMatrix::zero(1, count);
    for c in 0..count {
        m.set(0, c, ring.one(), ring);
    }
    Ok(m)
}

/// The difference map: the column of g holds +1 at the fold composite and
/// -1 at the twisted-fold composite, coefficients summed when they agree.
pub fn rho_matrix(n: i32, ring: &ScalarRing, cap: u64) -> Result<SparseMatrix, CategoryError> {
    let (_, index) = hom_index(n, 0, cap)?;
    let gs = enumerate_hom(n, 2, cap)?;
    let fold = LabelledFiberMap::ordered_fold(2);
    let twisted = LabelledFiberMap::twisted_fold();
    let mut m = SparseMatrix::zero(index.len(), gs.len());
    for (c, g) in gs.iter().enumerate() {
        let plus = index[&LabelledFiberMap::compose(&fold, g)];
        let minus = index[&LabelledFiberMap::compose(&twisted, g)];
        m.add_to(plus, c, &ring.one(), ring);
        m.add_to(minus, c, &ring.neg(&ring.one()), ring);
    }
    Ok(m)
}

/// The two-step resolution data at a fixed rank; the composite of the
/// augmentation with the difference map vanishes by construction and is
/// checked exactly.
#[derive(Debug, Clone)]
pub struct PartialResolution {
    pub rank: i32,
    pub epsilon: SparseMatrix,
    pub rho: SparseMatrix,
}

impl PartialResolution {
    pub fn build(n: i32, ring: &ScalarRing, cap: u64) -> Result<Self, CategoryError> {
        let epsilon = epsilon_matrix(n, ring, cap)?;
        let rho = rho_matrix(n, ring, cap)?;
        assert!(epsilon.mul(&rho, ring).is_zero(), "augmentation of the difference map is nonzero");
        Ok(PartialResolution { rank: n, epsilon, rho })
    }
}

#[derive(Debug, Clone)]
pub struct ExactnessReport {
    pub rank: i32,
    pub ring: ScalarRing,
    pub hom_to_point: usize,
    pub hom_to_plane: usize,
    pub composite_is_zero: bool,
    pub image_rank: usize,
    pub kernel_rank: usize,
}

impl ExactnessReport {
    pub fn passed(&self) -> bool {
        self.composite_is_zero && self.image_rank == self.kernel_rank
    }
}

/// Exactness at the middle term: the composite vanishes exactly and the
/// image of the difference map has the full corank-one rank. Since every
/// column lies in the kernel of the augmentation, the rank computation can
/// stop as soon as it reaches that bound.
pub fn verify_exactness(n: i32, ring: &ScalarRing, cap: u64) -> Result<ExactnessReport, CategoryError> {
    let resolution = PartialResolution::build(n, ring, cap)?;
    let hom_to_point = resolution.epsilon.cols();
    let hom_to_plane = resolution.rho.cols();
    let composite_is_zero = resolution.epsilon.mul(&resolution.rho, ring).is_zero();
    // rank of the augmentation is 1, so its kernel has dimension one less
    let kernel_rank = hom_to_point - 1;
    let image_rank = column_rank_with_cap(&resolution.rho, ring, Some(kernel_rank));
    Ok(ExactnessReport {
        rank: n,
        ring: *ring,
        hom_to_point,
        hom_to_plane,
        composite_is_zero,
        image_rank,
        kernel_rank,
    })
}

/// The boundary A^{(x)3} -> A on elementary tensors:
/// a0 (x) a1 (x) a2 -> a0 a1 a2 - a2 conj(a1) a0.
pub fn boundary_matrix(algebra: &InvolutiveAlgebra) -> SparseMatrix {
    let fold = bar_matrix(algebra, &LabelledFiberMap::ordered_fold(2));
    let twisted = bar_matrix(algebra, &LabelledFiberMap::twisted_fold());
    fold.sub(&twisted, algebra.ring())
}

/// The ring structure induced on the quotient over a field: canonical class
/// representatives, the projected unit, and the full multiplication table
/// in quotient coordinates.
#[derive(Debug, Clone)]
pub struct QuotientRing {
    pub class_representatives: Vec<usize>,
    pub unit: FreeModuleVector,
    pub table: Vec<FreeModuleVector>, // index i * dim + j
}

impl QuotientRing {
    pub fn dimension(&self) -> usize {
        self.class_representatives.len()
    }

    pub fn multiply(&self, ring: &ScalarRing, u: &FreeModuleVector, v: &FreeModuleVector) -> FreeModuleVector {
        let q = self.dimension();
        assert_eq!(u.dimension(), q);
        assert_eq!(v.dimension(), q);
        let mut out = FreeModuleVector::zero(q);
        for (i, a) in u.iter() {
            for (j, b) in v.iter() {
                let coeff = ring.mul(a, b);
                out = out.add_scaled(&self.table[i * q + j], &coeff, ring);
            }
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct Ho0Result {
    pub ring: ScalarRing,
    pub algebra_dimension: usize,
    pub presentation: CokernelPresentation,
    /// Present over fields; the quotient of an integral algebra reports
    /// free rank and invariant factors through the presentation instead.
    pub quotient_ring: Option<QuotientRing>,
}

impl Ho0Result {
    pub fn dimension(&self) -> Option<usize> {
        self.presentation.quotient_dimension()
    }

    /// Project an algebra element to quotient coordinates (fields only).
    pub fn project(&self, v: &FreeModuleVector) -> FreeModuleVector {
        match &self.presentation.data {
            CokernelData::Field { projection, .. } => projection.mul_vector(v, &self.ring),
            CokernelData::Integers { .. } => panic!("projection requires a field"),
        }
    }

    /// The canonical algebra representative of a quotient class.
    pub fn section(&self, u: &FreeModuleVector) -> FreeModuleVector {
        let q = self.quotient_ring.as_ref().expect("field quotient");
        let mut out = FreeModuleVector::zero(self.algebra_dimension);
        for (i, c) in u.iter() {
            out.set(q.class_representatives[i], c.clone(), &self.ring);
        }
        out
    }
}

/// Degree-zero homology of an involutive algebra: the cokernel of the
/// boundary with the induced unital ring structure over a field, or free
/// rank plus invariant factors over the integers.
pub fn ho0(algebra: &InvolutiveAlgebra) -> Ho0Result {
    let ring = *algebra.ring();
    let relations = boundary_matrix(algebra);
    let presentation = cokernel(&relations, &ring);
    let quotient_ring = match &presentation.data {
        CokernelData::Integers { .. } => None,
        CokernelData::Field { projection, class_representatives, .. } => {
            let q = class_representatives.len();
            let project = |v: &FreeModuleVector| projection.mul_vector(v, &ring);
            let mut table = Vec::with_capacity(q * q);
            for &ri in class_representatives {
                for &rj in class_representatives {
                    table.push(project(algebra.mul_basis(ri, rj)));
                }
            }
            // the induced product may not depend on representatives: the
            // relation span must annihilate products from both sides
            let span = image_basis(&relations, &ring);
            for w in &span {
                for b in 0..algebra.dim() {
                    let e = algebra.basis_vector(b);
                    assert!(
                        project(&algebra.mul_vec(w, &e)).is_zero()
                            && project(&algebra.mul_vec(&e, w)).is_zero(),
                        "induced product depends on representatives"
                    );
                }
            }
            Some(QuotientRing {
                class_representatives: class_representatives.clone(),
                unit: project(algebra.unit()),
                table,
            })
        }
    };
    Ho0Result { ring, algebra_dimension: algebra.dim(), presentation, quotient_ring }
}

#[derive(Debug, Clone)]
pub struct IdealCheckReport {
    pub span_rank: usize,
    pub closed: bool,
    pub first_violation: Option<(usize, &'static str)>,
}

/// Check that the span of the boundary image is closed under left and
/// right multiplication by every basis element; the rank of the span must
/// not grow under augmentation.
pub fn ideal_check(algebra: &InvolutiveAlgebra) -> IdealCheckReport {
    let ring = *algebra.ring();
    let field = ring.fraction_field();
    let lift = ring == ScalarRing::Integers;
    let relations = boundary_matrix(algebra);
    let mut span = Subspace::new(field, algebra.dim());
    for col in relations.columns() {
        span.insert(&col.map_into_ring(&ring, lift));
    }
    let span_rank = span.rank();
    let basis_of_span: Vec<FreeModuleVector> = span.basis().into_iter().cloned().collect();
    for b in 0..algebra.dim() {
        let e = FreeModuleVector::basis(algebra.dim(), b, &field);
        for w in &basis_of_span {
            // products are computed in the fraction field throughout
            let left = mul_in_field(algebra, &e, w, &field);
            let right = mul_in_field(algebra, w, &e, &field);
            if !span.contains(&left) {
                return IdealCheckReport { span_rank, closed: false, first_violation: Some((b, "left")) };
            }
            if !span.contains(&right) {
                return IdealCheckReport { span_rank, closed: false, first_violation: Some((b, "right")) };
            }
        }
    }
    IdealCheckReport { span_rank, closed: true, first_violation: None }
}

fn mul_in_field(
    algebra: &InvolutiveAlgebra,
    a: &FreeModuleVector,
    b: &FreeModuleVector,
    field: &ScalarRing,
) -> FreeModuleVector {
    let ring = algebra.ring();
    let lift = *ring == ScalarRing::Integers;
    let mut out = FreeModuleVector::zero(algebra.dim());
    for (i, x) in a.iter() {
        for (j, y) in b.iter() {
            let coeff = field.mul(x, y);
            let table = algebra.mul_basis(i, j).map_into_ring(ring, lift);
            out = out.add_scaled(&table, &coeff, field);
        }
    }
    out
}

/// The degree-zero product computed at chain level: lift both classes to
/// algebra representatives sitting at degree-zero generators over [0], pair
/// them through the arity-2 block structure map at the identity vertex,
/// evaluate the resulting generator over [1], fold down to [0] and project
/// back to quotient coordinates.
pub fn pontryagin_product(
    algebra: &InvolutiveAlgebra,
    h: &Ho0Result,
    u: &FreeModuleVector,
    v: &FreeModuleVector,
) -> FreeModuleVector {
    assert_eq!(h.algebra_dimension, algebra.dim(), "class from a different algebra");
    assert_eq!(h.ring, *algebra.ring(), "class over a different scalar ring");
    let ring = algebra.ring();
    let a = h.section(u);
    let b = h.section(v);
    // the two degree-zero generators are paired through the block
    // structure map of two identity objects at the identity vertex
    let block = lambda(
        &Perm::identity(2),
        &[LabelledFiberMap::identity(0), LabelledFiberMap::identity(0)],
    );
    let pair = Tensor::product(
        &Tensor::from_vector(1, a),
        &Tensor::from_vector(1, b),
        algebra.dim(),
        ring,
    );
    let over_line = quotient_q(algebra, &UnderCatString { base: block, arrows: Vec::new() }, &pair);
    // a degree-one string from the fold identifies the generator over [1]
    // with its folded image over [0]
    let folded = bar_evaluate(algebra, &LabelledFiberMap::ordered_fold(1), &over_line.value);
    h.project(folded.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{
        group_algebra, matrix_algebra, truncated_polynomial, truncated_polynomial_signed,
        FiniteGroup, InvolutiveAlgebra,
    };
    use crate::category::DEFAULT_ENUM_CAP;
    use num::BigInt;

    fn q() -> ScalarRing {
        ScalarRing::Rationals
    }

    fn f2() -> ScalarRing {
        ScalarRing::prime_field(2).unwrap()
    }

    fn gaussian() -> InvolutiveAlgebra {
        InvolutiveAlgebra::parse(
            "ring Q\nbasis e i\nunit = e\nmul e e = e\nmul e i = i\nmul i e = i\nmul i i = -e\ninv e = e\ninv i = -1*i\n",
        )
        .unwrap()
    }

    #[test]
    fn epsilon_shapes() {
        let e0 = epsilon_matrix(0, &q(), DEFAULT_ENUM_CAP).unwrap();
        assert_eq!((e0.rows(), e0.cols()), (1, 2));
        assert!(e0.iter().all(|(_, _, v)| q().is_one(v)));
        let e1 = epsilon_matrix(1, &q(), DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(e1.cols(), 8);
        assert_eq!(e1.nnz(), 8);
        // the fold's coordinate maps to 1
        let (_, index) = hom_index(1, 0, DEFAULT_ENUM_CAP).unwrap();
        let at = index[&LabelledFiberMap::ordered_fold(1)];
        assert!(q().is_one(e1.get(0, at).unwrap()));
    }

    #[test]
    fn rho_identity_partition_column() {
        let (_, index) = hom_index(2, 0, DEFAULT_ENUM_CAP).unwrap();
        let gs = enumerate_hom(2, 2, DEFAULT_ENUM_CAP).unwrap();
        let rho = rho_matrix(2, &q(), DEFAULT_ENUM_CAP).unwrap();
        let id_partition = LabelledFiberMap::identity(2);
        let col = gs.iter().position(|g| *g == id_partition).unwrap();
        let fold_row = index[&LabelledFiberMap::ordered_fold(2)];
        let twisted_row = index[&LabelledFiberMap::twisted_fold()];
        assert_eq!(rho.get(fold_row, col), Some(&q().one()));
        assert_eq!(rho.get(twisted_row, col), Some(&q().from_i64(-1)));
        assert_eq!(rho.column(col).support_len(), 2);
    }

    #[test]
    fn rho_cancelling_column_is_zero() {
        // everything in the top fiber: both composites agree, so the
        // column cancels to zero
        let g = LabelledFiberMap::parse("HOM 2 2 : | | 0^+ 1^+ 2^+").unwrap();
        let gs = enumerate_hom(2, 2, DEFAULT_ENUM_CAP).unwrap();
        let col = gs.iter().position(|x| *x == g).unwrap();
        let rho = rho_matrix(2, &q(), DEFAULT_ENUM_CAP).unwrap();
        assert!(rho.column(col).is_zero());
    }

    #[test]
    fn exactness_small_ranks_over_q() {
        for (n, expected) in [(0, 1usize), (1, 7), (2, 47)] {
            let report = verify_exactness(n, &q(), DEFAULT_ENUM_CAP).unwrap();
            assert!(report.composite_is_zero);
            assert_eq!(report.image_rank, expected);
            assert_eq!(report.kernel_rank, expected);
            assert!(report.passed());
        }
    }

    #[test]
    fn exactness_rank_two_over_f2() {
        let report = verify_exactness(2, &f2(), DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(report.image_rank, 47);
        assert!(report.passed());
    }

    #[test]
    fn boundary_vanishes_for_commutative_trivial_involution() {
        let a = truncated_polynomial(ScalarRing::prime_field(5).unwrap(), 3).unwrap();
        assert!(boundary_matrix(&a).is_zero());
    }

    #[test]
    fn boundary_conjugation_example() {
        let a = gaussian();
        let d = boundary_matrix(&a);
        // e (x) i (x) e maps to i - conj(i) = 2i
        let col = d.column(crate::algebra::encode_word(2, &[0, 1, 0]));
        let mut expected = FreeModuleVector::zero(2);
        expected.set(1, q().from_i64(2), &q());
        assert_eq!(col, expected);
        // i (x) i (x) e maps to i*i - conj(i)*i = -e - e = -2e
        let col = d.column(crate::algebra::encode_word(2, &[1, 1, 0]));
        let mut expected = FreeModuleVector::zero(2);
        expected.set(0, q().from_i64(-2), &q());
        assert_eq!(col, expected);
    }

    #[test]
    fn boundary_matches_direct_matrix_products() {
        // oracle: multiply 2x2 matrices over F3 directly
        let f3 = ScalarRing::prime_field(3).unwrap();
        let a = matrix_algebra(&truncated_polynomial(f3, 1).unwrap(), 2).unwrap();
        let d = boundary_matrix(&a);
        type M = [[i64; 2]; 2];
        let basis: [M; 4] = [
            [[1, 0], [0, 0]],
            [[0, 1], [0, 0]],
            [[0, 0], [1, 0]],
            [[0, 0], [0, 1]],
        ];
        let mul = |x: &M, y: &M| -> M {
            let mut out = [[0i64; 2]; 2];
            for r in 0..2 {
                for c in 0..2 {
                    for k in 0..2 {
                        out[r][c] = (out[r][c] + x[r][k] * y[k][c]).rem_euclid(3);
                    }
                }
            }
            out
        };
        let transpose = |x: &M| -> M { [[x[0][0], x[1][0]], [x[0][1], x[1][1]]] };
        for w0 in 0..4usize {
            for w1 in 0..4usize {
                for w2 in 0..4usize {
                    let lhs = mul(&mul(&basis[w0], &basis[w1]), &basis[w2]);
                    let rhs = mul(&mul(&basis[w2], &transpose(&basis[w1])), &basis[w0]);
                    let mut expected = FreeModuleVector::zero(4);
                    for b in 0..4usize {
                        let (r, c) = (b / 2, b % 2);
                        let v = (lhs[r][c] - rhs[r][c]).rem_euclid(3);
                        if v != 0 {
                            expected.set(b, f3.from_i64(v), &f3);
                        }
                    }
                    let col = d.column(crate::algebra::encode_word(4, &[w0, w1, w2]));
                    assert_eq!(col, expected, "word ({w0},{w1},{w2})");
                }
            }
        }
    }

    #[test]
    fn ho0_truncated_polynomial_is_whole_algebra() {
        let a = truncated_polynomial(ScalarRing::prime_field(5).unwrap(), 3).unwrap();
        let h = ho0(&a);
        assert_eq!(h.dimension(), Some(3));
        let ring = h.quotient_ring.as_ref().unwrap();
        // the projection is the identity, so the table is the algebra table
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(&ring.table[i * 3 + j], a.mul_basis(i, j));
            }
        }
    }

    #[test]
    fn ho0_matrix_algebra_vanishes() {
        let f3 = ScalarRing::prime_field(3).unwrap();
        let a = matrix_algebra(&truncated_polynomial(f3, 1).unwrap(), 2).unwrap();
        let h = ho0(&a);
        assert_eq!(h.dimension(), Some(0));
    }

    #[test]
    fn ho0_signed_truncation_has_torsion_over_z() {
        // Z[x]/(x^2) with x -> -x: relations are spanned by 2x
        let a = truncated_polynomial_signed(ScalarRing::Integers, 2).unwrap();
        let h = ho0(&a);
        match &h.presentation.data {
            CokernelData::Integers { free_rank, .. } => assert_eq!(*free_rank, 1),
            _ => panic!("expected integer data"),
        }
        assert_eq!(h.presentation.torsion(), vec![BigInt::from(2)]);
        assert!(h.quotient_ring.is_none());
    }

    #[test]
    fn ho0_signed_truncation_over_q() {
        let a = truncated_polynomial_signed(ScalarRing::Rationals, 2).unwrap();
        let h = ho0(&a);
        assert_eq!(h.dimension(), Some(1));
        let ring = h.quotient_ring.as_ref().unwrap();
        assert_eq!(ring.class_representatives, vec![0]);
    }

    #[test]
    fn ho0_group_algebra_c3() {
        // the relation span of Q[C3] with g -> g^{-1} has rank 2
        let a = group_algebra(q(), &FiniteGroup::cyclic(3)).unwrap();
        let h = ho0(&a);
        assert_eq!(h.dimension(), Some(1));
    }

    #[test]
    fn ideal_check_on_corpus() {
        let f3 = ScalarRing::prime_field(3).unwrap();
        let m2 = matrix_algebra(&truncated_polynomial(f3, 1).unwrap(), 2).unwrap();
        let report = ideal_check(&m2);
        assert!(report.closed);
        assert_eq!(report.span_rank, 4);

        let a = truncated_polynomial(ScalarRing::prime_field(5).unwrap(), 3).unwrap();
        let report = ideal_check(&a);
        assert!(report.closed);
        assert_eq!(report.span_rank, 0);

        let g = gaussian();
        let report = ideal_check(&g);
        assert!(report.closed);
        assert_eq!(report.span_rank, 2);

        let s = truncated_polynomial_signed(ScalarRing::Rationals, 2).unwrap();
        let report = ideal_check(&s);
        assert!(report.closed);
        assert_eq!(report.span_rank, 1);

        let z = truncated_polynomial_signed(ScalarRing::Integers, 2).unwrap();
        let report = ideal_check(&z);
        assert!(report.closed);
        assert_eq!(report.span_rank, 1);
    }

    #[test]
    fn commutators_lie_in_relation_span_for_matrix_algebra() {
        // with the unit in the middle slot the boundary produces plain
        // commutators, which therefore sit inside the relation span
        let f3 = ScalarRing::prime_field(3).unwrap();
        let a = matrix_algebra(&truncated_polynomial(f3, 1).unwrap(), 2).unwrap();
        let relations = boundary_matrix(&a);
        let mut span = Subspace::new(f3, a.dim());
        for col in relations.columns() {
            span.insert(&col);
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let ei = a.basis_vector(i);
                let ej = a.basis_vector(j);
                let comm = a.mul_vec(&ei, &ej).sub(&a.mul_vec(&ej, &ei), &f3);
                assert!(span.contains(&comm));
            }
        }
    }

    #[test]
    fn pontryagin_matches_quotient_table() {
        let algebras = vec![
            truncated_polynomial(ScalarRing::prime_field(5).unwrap(), 3).unwrap(),
            group_algebra(f2(), &FiniteGroup::cyclic(2)).unwrap(),
            group_algebra(q(), &FiniteGroup::cyclic(3)).unwrap(),
            truncated_polynomial_signed(ScalarRing::Rationals, 2).unwrap(),
        ];
        for a in &algebras {
            let h = ho0(a);
            let qr = h.quotient_ring.as_ref().unwrap();
            let dim = qr.dimension();
            let ring = a.ring();
            for i in 0..dim {
                for j in 0..dim {
                    let u = FreeModuleVector::basis(dim, i, ring);
                    let v = FreeModuleVector::basis(dim, j, ring);
                    let chain = pontryagin_product(a, &h, &u, &v);
                    let table = qr.multiply(ring, &u, &v);
                    assert_eq!(chain, table);
                    // graded commutativity in degree zero
                    let swapped = pontryagin_product(a, &h, &v, &u);
                    assert_eq!(chain, swapped);
                }
            }
            // unit law
            for j in 0..dim {
                let v = FreeModuleVector::basis(dim, j, ring);
                assert_eq!(pontryagin_product(a, &h, &qr.unit, &v), v);
            }
        }
    }

    #[test]
    fn ho0_ring_is_associative_and_unital() {
        let a = group_algebra(q(), &FiniteGroup::cyclic(3)).unwrap();
        let h = ho0(&a);
        let qr = h.quotient_ring.as_ref().unwrap();
        let dim = qr.dimension();
        let ring = a.ring();
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let u = FreeModuleVector::basis(dim, i, ring);
                    let v = FreeModuleVector::basis(dim, j, ring);
                    let w = FreeModuleVector::basis(dim, k, ring);
                    let left = qr.multiply(ring, &qr.multiply(ring, &u, &v), &w);
                    let right = qr.multiply(ring, &u, &qr.multiply(ring, &v, &w));
                    assert_eq!(left, right);
                }
            }
        }
    }
}
