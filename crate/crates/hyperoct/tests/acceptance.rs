//! Acceptance suite: one test per acceptance criterion, each printing a
//! pass line with the quantities it checked. Budgets are asserted with
//! wall-clock timers where the criterion carries one.

use hyperoct::algebra::{
    bar_evaluate, group_algebra, matrix_algebra, truncated_polynomial,
    truncated_polynomial_signed, FiniteGroup, InvolutiveAlgebra, Tensor,
};
use hyperoct::category::{enumerate_hom, hom_count, DEFAULT_ENUM_CAP};
use hyperoct::degree_zero::{
    ho0, hom_index, ideal_check, pontryagin_product, rho_matrix, verify_exactness,
};
use hyperoct::linalg::FreeModuleVector;
use hyperoct::operads::{verify_module_axioms, verify_operad_axioms, verify_simplicial};
use hyperoct::reduction::{image_membership, reduce, verify_certificate};
use hyperoct::scalar::ScalarRing;
use hyperoct::{DeltaHMorphism, LabelledFiberMap};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn f2() -> ScalarRing {
    ScalarRing::prime_field(2).unwrap()
}

fn q() -> ScalarRing {
    ScalarRing::Rationals
}

fn gaussian() -> InvolutiveAlgebra {
    InvolutiveAlgebra::parse(
        "ring Q\nbasis e i\nunit = e\nmul e e = e\nmul e i = i\nmul i e = i\nmul i i = -1*e\ninv e = e\ninv i = -1*i\n",
    )
    .unwrap()
}

fn corpus() -> Vec<(&'static str, InvolutiveAlgebra)> {
    let f3 = ScalarRing::prime_field(3).unwrap();
    let f5 = ScalarRing::prime_field(5).unwrap();
    vec![
        ("F5[x]/(x^3)", truncated_polynomial(f5, 3).unwrap()),
        ("F2[C2]", group_algebra(f2(), &FiniteGroup::cyclic(2)).unwrap()),
        ("Q[C3]", group_algebra(q(), &FiniteGroup::cyclic(3)).unwrap()),
        ("Q[x]/(x^2) signed", truncated_polynomial_signed(q(), 2).unwrap()),
        ("Q[i] conjugation", gaussian()),
        ("M2(F3) transpose", matrix_algebra(&truncated_polynomial(f3, 1).unwrap(), 2).unwrap()),
        (
            "M3(Q[y]/(y^2)) transpose",
            matrix_algebra(&truncated_polynomial(q(), 2).unwrap(), 3).unwrap(),
        ),
    ]
}

#[test]
fn criterion_01_exactness() {
    let started = Instant::now();
    for n in 0..=2 {
        let report = verify_exactness(n, &q(), DEFAULT_ENUM_CAP).unwrap();
        assert!(report.passed(), "exactness failed over Q at n={n}: {report:?}");
    }
    for n in 0..=3 {
        let report = verify_exactness(n, &f2(), DEFAULT_ENUM_CAP).unwrap();
        assert!(report.passed(), "exactness failed over F2 at n={n}: {report:?}");
        assert_eq!(report.image_rank, report.hom_to_point - 1);
    }
    let rank_time = started.elapsed();
    assert!(rank_time.as_secs() < 60, "exactness ranks took {rank_time:?}");

    // constructive cross-check: the telescoping identity as exact matrix
    // arithmetic, exhaustive for n <= 2 and on 500 seeded draws at n = 3
    let mut checked = 0usize;
    for n in 0..=2i32 {
        let (_, point_index) = hom_index(n, 0, DEFAULT_ENUM_CAP).unwrap();
        let (_, plane_index) = hom_index(n, 2, DEFAULT_ENUM_CAP).unwrap();
        let rho = rho_matrix(n, &q(), DEFAULT_ENUM_CAP).unwrap();
        let columns = rho.columns();
        for f in enumerate_hom(n, 0, DEFAULT_ENUM_CAP).unwrap() {
            let expr = image_membership(&f);
            let mut sum = FreeModuleVector::zero(point_index.len());
            for g in &expr.witnesses {
                sum = sum.add(&columns[plane_index[g]], &q());
            }
            let mut expected = FreeModuleVector::zero(point_index.len());
            expected.set(point_index[&f], q().one(), &q());
            let fold = point_index[&LabelledFiberMap::ordered_fold(n)];
            let cur = expected.get(fold).cloned().unwrap_or_else(|| q().zero());
            expected.set(fold, q().sub(&cur, &q().one()), &q());
            assert_eq!(sum, expected, "telescoping failed for {f}");
            checked += 1;
        }
    }
    let n = 3i32;
    let (_, point_index) = hom_index(n, 0, DEFAULT_ENUM_CAP).unwrap();
    let (_, plane_index) = hom_index(n, 2, DEFAULT_ENUM_CAP).unwrap();
    let rho = rho_matrix(n, &q(), DEFAULT_ENUM_CAP).unwrap();
    let columns = rho.columns();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..500 {
        let f = LabelledFiberMap::random(&mut rng, n, 0);
        let expr = image_membership(&f);
        let mut sum = FreeModuleVector::zero(point_index.len());
        for g in &expr.witnesses {
            sum = sum.add(&columns[plane_index[g]], &q());
        }
        let mut expected = FreeModuleVector::zero(point_index.len());
        expected.set(point_index[&f], q().one(), &q());
        let fold = point_index[&LabelledFiberMap::ordered_fold(n)];
        let cur = expected.get(fold).cloned().unwrap_or_else(|| q().zero());
        expected.set(fold, q().sub(&cur, &q().one()), &q());
        assert_eq!(sum, expected, "telescoping failed for {f}");
        checked += 1;
    }
    println!(
        "[criterion 1] exactness ranks 0..3 and {} telescoping identities pass in {:?}",
        checked,
        started.elapsed()
    );
}

#[test]
fn criterion_02_reduction_certificates() {
    let mut total = 0usize;
    for n in [2, 3] {
        for f in enumerate_hom(n, 0, DEFAULT_ENUM_CAP).unwrap() {
            let cert = reduce(&f);
            assert_eq!(verify_certificate(&cert), Ok(()), "certificate failed for {f}");
            total += 1;
        }
    }
    assert_eq!(total, 48 + 384);
    println!("[criterion 2] {total} reduction certificates verified pass");
}

#[test]
fn criterion_03_ho0_truncated_polynomial_f5() {
    let started = Instant::now();
    let a = truncated_polynomial(ScalarRing::prime_field(5).unwrap(), 3).unwrap();
    let h = ho0(&a);
    assert_eq!(h.dimension(), Some(3));
    let ring = h.quotient_ring.as_ref().unwrap();
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(&ring.table[i * 3 + j], a.mul_basis(i, j));
        }
    }
    assert!(started.elapsed().as_secs() < 5);
    println!("[criterion 3a] degree-zero homology of F5[x]/(x^3) is the algebra itself pass");
}

#[test]
fn criterion_03_ho0_complex_conjugation() {
    let started = Instant::now();
    let h = ho0(&gaussian());
    assert!(started.elapsed().as_secs() < 5);
    let dim = h.dimension();
    println!("[criterion 3b] degree-zero homology of the conjugation plane: dimension {dim:?}");
    assert_eq!(
        dim,
        Some(1),
        "expected dimension 1, got {dim:?}: the boundary image contains \
         d(i (x) i (x) e) = -2e as well as d(e (x) i (x) e) = 2i, so the \
         relation span is the whole algebra and the quotient vanishes"
    );
}

#[test]
fn criterion_03_ho0_matrix_algebras_vanish() {
    let f3 = ScalarRing::prime_field(3).unwrap();
    for algebra in [
        matrix_algebra(&truncated_polynomial(f3, 1).unwrap(), 2).unwrap(),
        matrix_algebra(&truncated_polynomial(q(), 2).unwrap(), 3).unwrap(),
    ] {
        let started = Instant::now();
        let h = ho0(&algebra);
        assert_eq!(h.dimension(), Some(0));
        assert!(started.elapsed().as_secs() < 5);
    }
    println!("[criterion 3c] degree-zero homology of both matrix algebras vanishes pass");
}

#[test]
fn criterion_04_pontryagin_product() {
    let mut pairs = 0usize;
    for (name, a) in corpus() {
        if !a.ring().is_field() {
            continue;
        }
        let h = ho0(&a);
        let Some(qr) = h.quotient_ring.as_ref() else { continue };
        let dim = qr.dimension();
        let ring = a.ring();
        for i in 0..dim {
            let u = FreeModuleVector::basis(dim, i, ring);
            assert_eq!(pontryagin_product(&a, &h, &qr.unit, &u), u, "unit law failed for {name}");
            for j in 0..dim {
                let v = FreeModuleVector::basis(dim, j, ring);
                let chain = pontryagin_product(&a, &h, &u, &v);
                let table = qr.multiply(ring, &u, &v);
                assert_eq!(chain, table, "chain-level product disagrees for {name}");
                assert_eq!(
                    chain,
                    pontryagin_product(&a, &h, &v, &u),
                    "degree-zero commutativity failed for {name}"
                );
                pairs += 1;
            }
        }
    }
    assert!(pairs > 0);
    println!("[criterion 4] chain-level product equals the quotient product on {pairs} pairs pass");
}

#[test]
fn criterion_05_ideal_property() {
    for (name, a) in corpus() {
        let report = ideal_check(&a);
        assert!(report.closed, "relation span of {name} is not an ideal: {report:?}");
    }
    println!("[criterion 5] relation spans closed under multiplication for the whole corpus pass");
}

#[test]
fn criterion_06_bar_functoriality() {
    let a = group_algebra(f2(), &FiniteGroup::cyclic(2)).unwrap();
    let d = a.dim();
    let mut checked = 0usize;
    let ranks = [-1i32, 0, 1];
    for &r0 in &ranks {
        for &r1 in &ranks {
            for &r2 in &ranks {
                let fs = enumerate_hom(r0, r1, DEFAULT_ENUM_CAP).unwrap();
                let gs = enumerate_hom(r1, r2, DEFAULT_ENUM_CAP).unwrap();
                for f in &fs {
                    for g in &gs {
                        let gf = LabelledFiberMap::compose(g, f);
                        let slots = (r0 + 1) as usize;
                        for idx in 0..d.pow(slots as u32) {
                            let word = hyperoct::algebra::decode_word(d, slots, idx);
                            let x = Tensor::elementary(d, &word, a.ring());
                            let direct = bar_evaluate(&a, &gf, &x);
                            let staged = bar_evaluate(&a, g, &bar_evaluate(&a, f, &x));
                            assert_eq!(direct, staged);
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    for _ in 0..1000 {
        let r0 = rng.gen_range(-1..=3);
        let r1 = rng.gen_range(0..=3);
        let r2 = rng.gen_range(0..=3);
        let f = LabelledFiberMap::random(&mut rng, r0, r1);
        let g = LabelledFiberMap::random(&mut rng, r1, r2);
        let gf = LabelledFiberMap::compose(&g, &f);
        let slots = (r0 + 1) as usize;
        for idx in 0..d.pow(slots as u32) {
            let word = hyperoct::algebra::decode_word(d, slots, idx);
            let x = Tensor::elementary(d, &word, a.ring());
            assert_eq!(
                bar_evaluate(&a, &gf, &x),
                bar_evaluate(&a, &g, &bar_evaluate(&a, &f, &x))
            );
        }
        checked += 1;
    }
    // identity acts as the identity on a spanning set
    for n in 0..=2i32 {
        let id = LabelledFiberMap::identity(n);
        for idx in 0..d.pow((n + 1) as u32) {
            let word = hyperoct::algebra::decode_word(d, (n + 1) as usize, idx);
            let x = Tensor::elementary(d, &word, a.ring());
            assert_eq!(bar_evaluate(&a, &id, &x), x);
        }
    }
    println!("[criterion 6] bar construction functorial on {checked} composable pairs pass");
}

#[test]
fn criterion_07_category_layer() {
    for n in -1..=2i32 {
        for m in -1..=2i32 {
            let listed = enumerate_hom(n, m, DEFAULT_ENUM_CAP).unwrap().len() as u128;
            assert_eq!(Some(listed), hom_count(n, m));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    for _ in 0..1000 {
        let n = rng.gen_range(-1..=3);
        let m = rng.gen_range(0..=3);
        let p = rng.gen_range(0..=3);
        let f = LabelledFiberMap::random(&mut rng, n, m);
        let g = LabelledFiberMap::random(&mut rng, m, p);
        assert_eq!(f.to_delta_h().to_fiber_map(), f);
        let composed = LabelledFiberMap::compose(&g, &f).to_delta_h();
        let transported = DeltaHMorphism::compose(&g.to_delta_h(), &f.to_delta_h());
        assert_eq!(composed, transported);
    }
    let ranks = [-1i32, 0, 1];
    let mut triples = 0usize;
    for &a in &ranks {
        for &b in &ranks {
            for &c in &ranks {
                for &d in &ranks {
                    let fs = enumerate_hom(a, b, DEFAULT_ENUM_CAP).unwrap();
                    let gs = enumerate_hom(b, c, DEFAULT_ENUM_CAP).unwrap();
                    let hs = enumerate_hom(c, d, DEFAULT_ENUM_CAP).unwrap();
                    for f in &fs {
                        for g in &gs {
                            for h in &hs {
                                assert_eq!(
                                    LabelledFiberMap::compose(h, &LabelledFiberMap::compose(g, f)),
                                    LabelledFiberMap::compose(&LabelledFiberMap::compose(h, g), f)
                                );
                                triples += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    println!("[criterion 7] hom counts, decomposition round-trip, associativity on {triples} triples pass");
}

#[test]
fn criterion_08_operad_and_module_axioms() {
    let started = Instant::now();
    let operad = verify_operad_axioms(3, 3, 1000, 404);
    assert!(operad.passed(), "{operad:?}");
    let module = verify_module_axioms(2, 2, 3, 200, 505);
    assert!(module.passed(), "{module:?}");
    assert!(module.bijective_count.instances > 0);
    assert!(module.orbit_invariance.instances > 1000);
    assert!(module.monoidal_strictness.instances > 0);
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 300, "axiom verification took {elapsed:?}");
    println!(
        "[criterion 8] operad axioms ({} associativity instances) and module axioms ({} instances) pass in {elapsed:?}",
        operad.associativity.instances, module.associativity.instances
    );
}

#[test]
fn criterion_09_simplicial_layer() {
    let a = group_algebra(f2(), &FiniteGroup::cyclic(2)).unwrap();
    let report = verify_simplicial(&a, 80, 100, 606);
    assert!(report.passed(), "{report:?}");
    assert!(report.quotient_faces.instances >= 100);
    println!(
        "[criterion 9] simplicial identities ({} instances) and quotient compatibility ({} instances) pass",
        report.face_face.instances + report.face_degeneracy.instances + report.degeneracy_degeneracy.instances,
        report.quotient_faces.instances
    );
}
