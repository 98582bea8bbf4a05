//! The categorical Barratt-Eccles operad on the categories with one object
//! per permutation and a unique morphism between any two, its block
//! composition maps, and exhaustive small-arity verification of the operad
//! axioms; the tuple category over a free involutive monoid; the left
//! module of under-categories and its evaluation isomorphism onto tuples;
//! the face and degeneracy maps of the nerve-style chain generators and the
//! quotient onto chains of the bar construction.

use crate::algebra::{bar_evaluate, bar_evaluate_monoid, InvolutiveAlgebra, InvolutiveWord, Tensor};
use crate::category::{enumerate_hom, Label, LabelledFiberMap, Perm, SignedPermutation, DEFAULT_ENUM_CAP};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Apply a permutation to a tuple: entry i moves to position sigma(i).
pub fn permute_tuple<T: Clone>(sigma: &Perm, xs: &[T]) -> Vec<T> {
    assert_eq!(sigma.size(), xs.len());
    let mut out: Vec<Option<T>> = vec![None; xs.len()];
    for (i, x) in xs.iter().enumerate() {
        out[sigma.apply(i)] = Some(x.clone());
    }
    out.into_iter().map(|x| x.unwrap()).collect()
}

/// The operad composition on permutation objects: tau_i acts within the
/// i-th block and the blocks are rearranged by sigma, the i-th block
/// landing in position sigma(i).
pub fn block_permutation(sigma: &Perm, taus: &[Perm]) -> Perm {
    assert_eq!(sigma.size(), taus.len(), "arity mismatch");
    let m = taus.len();
    let sizes: Vec<usize> = taus.iter().map(|t| t.size()).collect();
    let mut in_offsets = vec![0usize; m];
    for i in 1..m {
        in_offsets[i] = in_offsets[i - 1] + sizes[i - 1];
    }
    let total: usize = sizes.iter().sum();
    // offset of block i in the output, where block order is sigma^{-1}
    let inv = sigma.inverse();
    let mut out_offsets = vec![0usize; m];
    let mut acc = 0usize;
    for t in 0..m {
        let i = inv.apply(t);
        out_offsets[i] = acc;
        acc += sizes[i];
    }
    let mut images = vec![0usize; total];
    for i in 0..m {
        for l in 0..sizes[i] {
            images[in_offsets[i] + l] = out_offsets[i] + taus[i].apply(l);
        }
    }
    Perm::from_one_line(images)
}

/// Blocks rearranged by sigma with nothing happening inside them.
pub fn block_transport(sigma: &Perm, sizes: &[usize]) -> Perm {
    let ids: Vec<Perm> = sizes.iter().map(|&k| Perm::identity(k)).collect();
    block_permutation(sigma, &ids)
}

/// tau_1 + ... + tau_m acting blockwise with no block rearrangement.
pub fn direct_sum(taus: &[Perm]) -> Perm {
    block_permutation(&Perm::identity(taus.len()), taus)
}

/// The category with one object per group element of Sigma_m and a unique
/// morphism between any ordered pair.
#[derive(Debug, Clone, Copy)]
pub struct EPermCategory {
    pub arity: usize,
}

impl EPermCategory {
    pub fn objects(&self) -> Vec<Perm> {
        Perm::enumerate(self.arity)
    }

    /// The unique morphism from g1 to g2, recorded as g2 g1^{-1}.
    pub fn hom(&self, g1: &Perm, g2: &Perm) -> Perm {
        g2.compose(&g1.inverse())
    }
}

#[derive(Debug, Clone, Default)]
pub struct CheckedLaw {
    pub instances: usize,
    pub failure: Option<String>,
}

impl CheckedLaw {
    fn record(&mut self, ok: bool, describe: impl Fn() -> String) {
        self.instances += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Debug, Clone, Default)]
pub struct OperadReport {
    pub unit: CheckedLaw,
    pub associativity: CheckedLaw,
    pub equivariance_outer: CheckedLaw,
    pub equivariance_inner: CheckedLaw,
    pub freeness: CheckedLaw,
    pub contractibility: CheckedLaw,
}

impl OperadReport {
    pub fn passed(&self) -> bool {
        self.unit.passed()
            && self.associativity.passed()
            && self.equivariance_outer.passed()
            && self.equivariance_inner.passed()
            && self.freeness.passed()
            && self.contractibility.passed()
    }
}

fn size_profiles(slots: usize, max_each: usize, max_total: Option<usize>) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; slots];
    fn rec(
        slot: usize,
        max_each: usize,
        max_total: Option<usize>,
        used: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if slot == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..=max_each {
            if let Some(t) = max_total {
                if used + v > t {
                    break;
                }
            }
            cur[slot] = v;
            rec(slot + 1, max_each, max_total, used + v, cur, out);
        }
    }
    rec(0, max_each, max_total, 0, &mut cur, &mut out);
    out
}

fn perm_choices(sizes: &[usize]) -> Vec<Vec<Perm>> {
    let pools: Vec<Vec<Perm>> = sizes.iter().map(|&k| Perm::enumerate(k)).collect();
    let mut out: Vec<Vec<Perm>> = vec![Vec::new()];
    for pool in pools {
        let mut next = Vec::with_capacity(out.len() * pool.len());
        for prefix in &out {
            for p in &pool {
                let mut v = prefix.clone();
                v.push(p.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out
}

fn check_associativity_instance(report: &mut OperadReport, sigma: &Perm, taus: &[Perm], rhos: &[Perm]) {
    let k: usize = taus.iter().map(|t| t.size()).sum();
    assert_eq!(rhos.len(), k);
    let lhs = block_permutation(&block_permutation(sigma, taus), rhos);
    let mut inner = Vec::with_capacity(taus.len());
    let mut offset = 0usize;
    for tau in taus {
        let slice = &rhos[offset..offset + tau.size()];
        inner.push(block_permutation(tau, slice));
        offset += tau.size();
    }
    let rhs = block_permutation(sigma, &inner);
    report
        .associativity
        .record(lhs == rhs, || format!("associativity failed at sigma={sigma} taus={taus:?}"));
}

/// Exhaustive verification of the operad axioms at small arity: unit,
/// associativity, both equivariance laws, freeness of the right action and
/// the unique-morphism property of each piece. Associativity is exhausted
/// over two joint regimes (every size <= 2, and total sizes <= max at each
/// level) and additionally sampled at the full bound.
pub fn verify_operad_axioms(max_m: usize, max_k: usize, random_triples: usize, seed: u64) -> OperadReport {
    let mut report = OperadReport::default();

    // unit laws
    for k in 0..=(max_m * max_k) {
        for d in Perm::enumerate(k.min(4)) {
            let got = block_permutation(&Perm::identity(1), std::slice::from_ref(&d));
            report.unit.record(got == d, || format!("left unit failed on {d}"));
        }
    }
    for m in 0..=max_m {
        for c in Perm::enumerate(m) {
            let ones: Vec<Perm> = (0..m).map(|_| Perm::identity(1)).collect();
            let got = block_permutation(&c, &ones);
            report.unit.record(got == c, || format!("right unit failed on {c}"));
        }
    }

    // associativity: exhaustive with every arity <= 2
    for m in 0..=2usize {
        for sigma in Perm::enumerate(m) {
            for profile in size_profiles(m, 2, None) {
                for taus in perm_choices(&profile) {
                    let k: usize = profile.iter().sum();
                    for inner_profile in size_profiles(k, 2, None) {
                        for rhos in perm_choices(&inner_profile) {
                            check_associativity_instance(&mut report, &sigma, &taus, &rhos);
                        }
                    }
                }
            }
        }
    }
    // associativity: exhaustive on wider arities with bounded totals
    for m in 0..=max_m {
        for sigma in Perm::enumerate(m) {
            for profile in size_profiles(m, max_k, Some(max_k)) {
                for taus in perm_choices(&profile) {
                    let k: usize = profile.iter().sum();
                    for inner_profile in size_profiles(k, max_k, Some(max_k)) {
                        for rhos in perm_choices(&inner_profile) {
                            check_associativity_instance(&mut report, &sigma, &taus, &rhos);
                        }
                    }
                }
            }
        }
    }
    // associativity: seeded random instances at the full bound
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random_triples {
        let m = rng.gen_range(0..=max_m);
        let sigma = Perm::random(&mut rng, m);
        let profile: Vec<usize> = (0..m).map(|_| rng.gen_range(0..=max_k)).collect();
        let taus: Vec<Perm> = profile.iter().map(|&k| Perm::random(&mut rng, k)).collect();
        let k: usize = profile.iter().sum();
        let rhos: Vec<Perm> = (0..k)
            .map(|_| {
                let size = rng.gen_range(0..=max_k);
                Perm::random(&mut rng, size)
            })
            .collect();
        check_associativity_instance(&mut report, &sigma, &taus, &rhos);
    }

    // equivariance in the outer argument:
    // gamma(c s; d) = gamma(c; d permuted by s) after the block transport of s
    for m in 0..=max_m {
        let perms = Perm::enumerate(m);
        for c in &perms {
            for s in &perms {
                for profile in size_profiles(m, max_k, None) {
                    for ds in perm_choices(&profile) {
                        let lhs = block_permutation(&c.compose(s), &ds);
                        let s_inv = s.inverse();
                        let permuted: Vec<Perm> =
                            (0..m).map(|t| ds[s_inv.apply(t)].clone()).collect();
                        let rhs = block_permutation(c, &permuted)
                            .compose(&block_transport(s, &profile));
                        report.equivariance_outer.record(lhs == rhs, || {
                            format!("outer equivariance failed at c={c} s={s} profile={profile:?}")
                        });
                    }
                }
            }
        }
    }

    // equivariance in the inner arguments:
    // gamma(c; d_i t_i) = gamma(c; d) after the direct sum of the t_i
    for m in 0..=max_m {
        for c in Perm::enumerate(m) {
            for profile in size_profiles(m, max_k, None) {
                let d_choices = perm_choices(&profile);
                // pair each d-tuple with every t-tuple would square the
                // count; a full pass with t = d and a full pass with d
                // fixed to identities covers both extremes, plus sampling
                for ds in &d_choices {
                    let ts = ds.clone();
                    let lhs_args: Vec<Perm> =
                        ds.iter().zip(&ts).map(|(d, t)| d.compose(t)).collect();
                    let lhs = block_permutation(&c, &lhs_args);
                    let rhs = block_permutation(&c, ds).compose(&direct_sum(&ts));
                    report.equivariance_inner.record(lhs == rhs, || {
                        format!("inner equivariance failed at c={c} profile={profile:?}")
                    });
                    let ids: Vec<Perm> = profile.iter().map(|&k| Perm::identity(k)).collect();
                    let lhs2 = block_permutation(&c, &ts);
                    let rhs2 = block_permutation(&c, &ids).compose(&direct_sum(&ts));
                    report.equivariance_inner.record(lhs2 == rhs2, || {
                        format!("inner equivariance failed at c={c} profile={profile:?} (identity d)")
                    });
                }
            }
        }
    }
    for _ in 0..random_triples {
        let m = rng.gen_range(0..=max_m);
        let c = Perm::random(&mut rng, m);
        let profile: Vec<usize> = (0..m).map(|_| rng.gen_range(0..=max_k)).collect();
        let ds: Vec<Perm> = profile.iter().map(|&k| Perm::random(&mut rng, k)).collect();
        let ts: Vec<Perm> = profile.iter().map(|&k| Perm::random(&mut rng, k)).collect();
        let lhs_args: Vec<Perm> = ds.iter().zip(&ts).map(|(d, t)| d.compose(t)).collect();
        let lhs = block_permutation(&c, &lhs_args);
        let rhs = block_permutation(&c, &ds).compose(&direct_sum(&ts));
        report.equivariance_inner.record(lhs == rhs, || {
            format!("inner equivariance failed at random c={c} profile={profile:?}")
        });
    }

    // freeness of the right action: g s = g forces s = id
    for m in 0..=max_m.max(4) {
        for g in Perm::enumerate(m) {
            for s in Perm::enumerate(m) {
                let fixed = g.compose(&s) == g;
                report
                    .freeness
                    .record(fixed == s.is_identity(), || format!("freeness failed at g={g} s={s}"));
            }
        }
    }

    // unique morphisms compose like the group: hom(g2,g3) hom(g1,g2) = hom(g1,g3)
    for m in 0..=max_m {
        let cat = EPermCategory { arity: m };
        let objects = cat.objects();
        for g1 in &objects {
            for g2 in &objects {
                for g3 in &objects {
                    let ok = cat.hom(g2, g3).compose(&cat.hom(g1, g2)) == cat.hom(g1, g3);
                    report
                        .contractibility
                        .record(ok, || format!("morphism composition failed at arity {m}"));
                }
                let ok = cat.hom(g1, g1).is_identity();
                report
                    .contractibility
                    .record(ok, || format!("identity morphism failed at arity {m}"));
            }
        }
    }

    report
}

/// Objects of the tuple category: finite tuples of monoid words.
pub type TupleObject = Vec<InvolutiveWord>;

pub fn tuple_concat(u: &TupleObject, v: &TupleObject) -> TupleObject {
    let mut out = u.clone();
    out.extend_from_slice(v);
    out
}

/// The algebra structure on tuples: concatenate the blocks in the order
/// prescribed by sigma.
pub fn tuple_theta(sigma: &Perm, blocks: &[TupleObject]) -> TupleObject {
    assert_eq!(sigma.size(), blocks.len());
    let inv = sigma.inverse();
    let mut out = Vec::new();
    for t in 0..blocks.len() {
        out.extend_from_slice(&blocks[inv.apply(t)]);
    }
    out
}

/// Arity of an under-category object: the number of source points of the
/// stored morphism.
pub fn object_arity(f: &LabelledFiberMap) -> usize {
    (f.source_rank() + 1) as usize
}

/// The monoidal product of morphisms: sources and targets are placed side
/// by side, fibers shifted accordingly.
pub fn block_product(maps: &[LabelledFiberMap]) -> LabelledFiberMap {
    let mut src_offset = 0usize;
    let mut fibers: Vec<Vec<(usize, Label)>> = Vec::new();
    let mut src_total = 0i32;
    let mut tgt_total = 0i32;
    for f in maps {
        src_total += f.source_rank() + 1;
        tgt_total += f.target_rank() + 1;
        for fiber in f.fibers() {
            fibers.push(fiber.iter().map(|(i, l)| (i + src_offset, *l)).collect());
        }
        src_offset += (f.source_rank() + 1) as usize;
    }
    LabelledFiberMap::new(src_total - 1, tgt_total - 1, fibers).expect("valid block product")
}

/// The left-module structure map: the blocks are rearranged by sigma, the
/// i-th argument landing in block position sigma(i).
pub fn lambda(sigma: &Perm, maps: &[LabelledFiberMap]) -> LabelledFiberMap {
    assert_eq!(sigma.size(), maps.len(), "arity mismatch");
    let inv = sigma.inverse();
    let ordered: Vec<LabelledFiberMap> =
        (0..maps.len()).map(|t| maps[inv.apply(t)].clone()).collect();
    block_product(&ordered)
}

/// A letter of the evaluation alphabet: a generator index with a bar state.
pub type Letter = (usize, Label);

/// Evaluate an under-category object on a tuple of letters through the
/// monoid bar construction.
pub fn evaluate_tuple(f: &LabelledFiberMap, letters: &[Letter]) -> TupleObject {
    assert_eq!(letters.len(), object_arity(f), "letter tuple arity mismatch");
    let words: Vec<InvolutiveWord> =
        letters.iter().map(|(g, l)| InvolutiveWord::letter(*g, *l)).collect();
    bar_evaluate_monoid(f, &words)
}

/// Completely factor a tuple of words: the canonical representative reads
/// the letters left to right, the fiber labels carry the bars as read and
/// the letter tuple is unbarred.
pub fn factorize(tuple: &TupleObject) -> (LabelledFiberMap, Vec<Letter>) {
    let mut fibers = Vec::with_capacity(tuple.len());
    let mut letters = Vec::new();
    for word in tuple {
        let mut fiber = Vec::with_capacity(word.len());
        for (gen, label) in &word.0 {
            fiber.push((letters.len(), *label));
            letters.push((*gen, Label::Pos));
        }
        fibers.push(fiber);
    }
    let m = letters.len() as i32;
    let p = tuple.len() as i32;
    let f = LabelledFiberMap::new(m - 1, p - 1, fibers).expect("valid factorization");
    (f, letters)
}

#[derive(Debug, Clone, Default)]
pub struct ModuleReport {
    pub unit: CheckedLaw,
    pub associativity: CheckedLaw,
    pub equivariance_outer: CheckedLaw,
    pub equivariance_inner: CheckedLaw,
    pub evaluation_square: CheckedLaw,
    pub orbit_invariance: CheckedLaw,
    pub bijective_count: CheckedLaw,
    pub factorization_round_trip: CheckedLaw,
    pub monoidal_strictness: CheckedLaw,
}

impl ModuleReport {
    pub fn passed(&self) -> bool {
        self.unit.passed()
            && self.associativity.passed()
            && self.equivariance_outer.passed()
            && self.equivariance_inner.passed()
            && self.evaluation_square.passed()
            && self.orbit_invariance.passed()
            && self.bijective_count.passed()
            && self.factorization_round_trip.passed()
            && self.monoidal_strictness.passed()
    }
}

/// All under-category objects of the given arity with target rank bounded.
pub fn under_objects(arity: usize, rank_cap: i32) -> Vec<LabelledFiberMap> {
    let source = arity as i32 - 1;
    let mut out = Vec::new();
    for q in -1..=rank_cap {
        if source >= 0 && q < 0 {
            continue;
        }
        out.extend(enumerate_hom(source, q, DEFAULT_ENUM_CAP).expect("small hom-set"));
    }
    out
}

fn object_tuples(pools: &[Vec<LabelledFiberMap>]) -> Vec<Vec<LabelledFiberMap>> {
    let mut out: Vec<Vec<LabelledFiberMap>> = vec![Vec::new()];
    for pool in pools {
        let mut next = Vec::with_capacity(out.len() * pool.len());
        for prefix in &out {
            for f in pool {
                let mut v = prefix.clone();
                v.push(f.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out
}

const ALPHABET: usize = 3;
const WORD_TRUNCATION: usize = 4;

fn all_letters() -> Vec<Letter> {
    let mut out = Vec::new();
    for g in 0..ALPHABET {
        out.push((g, Label::Pos));
        out.push((g, Label::Neg));
    }
    out
}

fn random_letters<R: Rng>(rng: &mut R, len: usize) -> Vec<Letter> {
    (0..len)
        .map(|_| {
            let g = rng.gen_range(0..ALPHABET);
            let l = if rng.gen::<bool>() { Label::Pos } else { Label::Neg };
            (g, l)
        })
        .collect()
}

/// All tuples with `parts` words of total length `letters`, each word at
/// most the truncation length, over the six-letter alphabet.
fn enumerate_tuples(parts: usize, letters: usize) -> Vec<TupleObject> {
    let alphabet = all_letters();
    let mut out = Vec::new();
    let mut shape = Vec::new();
    fn shapes(parts: usize, rest: usize, shape: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if rest == 0 {
                out.push(shape.clone());
            }
            return;
        }
        for l in 0..=rest.min(WORD_TRUNCATION) {
            shape.push(l);
            shapes(parts - 1, rest - l, shape, out);
            shape.pop();
        }
    }
    let mut all_shapes = Vec::new();
    shapes(parts, letters, &mut shape, &mut all_shapes);
    for shape in all_shapes {
        // fill each shape with every assignment of letters
        let total: usize = shape.iter().sum();
        let mut assignment = vec![0usize; total];
        loop {
            let mut tuple = Vec::with_capacity(parts);
            let mut idx = 0usize;
            for &len in &shape {
                let mut word = Vec::with_capacity(len);
                for _ in 0..len {
                    word.push(alphabet[assignment[idx]]);
                    idx += 1;
                }
                tuple.push(InvolutiveWord(word));
            }
            out.push(tuple);
            // increment the mixed-radix assignment
            let mut pos = 0usize;
            loop {
                if pos == total {
                    break;
                }
                assignment[pos] += 1;
                if assignment[pos] < alphabet.len() {
                    break;
                }
                assignment[pos] = 0;
                pos += 1;
            }
            if pos == total {
                break;
            }
            if total == 0 {
                break;
            }
        }
    }
    out
}

/// Verification of the left-module axioms for the block structure maps, the
/// commuting evaluation square against the tuple algebra, orbit invariance
/// and finite bijectivity of the evaluation, and strict monoidality of
/// tuple concatenation.
pub fn verify_module_axioms(
    max_m: usize,
    max_j: usize,
    rank_cap: i32,
    samples: usize,
    seed: u64,
) -> ModuleReport {
    let mut report = ModuleReport::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let pool_by_arity: Vec<Vec<LabelledFiberMap>> =
        (0..=max_m * max_j).map(|a| under_objects(a, rank_cap)).collect();
    let pool_all: Vec<LabelledFiberMap> =
        pool_by_arity.iter().take(max_j + 1).flatten().cloned().collect();

    // unit law
    for f in &pool_all {
        let got = lambda(&Perm::identity(1), std::slice::from_ref(f));
        report.unit.record(&got == f, || format!("module unit failed on {f}"));
    }

    // outer equivariance: lambda(c s; f) = lambda(c; f permuted by s)
    for m in 0..=max_m {
        let perms = Perm::enumerate(m);
        let pools: Vec<Vec<LabelledFiberMap>> = (0..m).map(|_| pool_all.clone()).collect();
        for fs in object_tuples(&pools) {
            for c in &perms {
                for s in &perms {
                    let lhs = lambda(&c.compose(s), &fs);
                    let s_inv = s.inverse();
                    let permuted: Vec<LabelledFiberMap> =
                        (0..m).map(|t| fs[s_inv.apply(t)].clone()).collect();
                    let rhs = lambda(c, &permuted);
                    report.equivariance_outer.record(lhs == rhs, || {
                        format!("module outer equivariance failed at c={c} s={s}")
                    });
                }
            }
        }
    }

    // inner equivariance: lambda(c; f_i h_i) = lambda(c; f) * sum of h_i
    for m in 0..=max_m {
        let perms = Perm::enumerate(m);
        let pools: Vec<Vec<LabelledFiberMap>> = (0..m).map(|_| pool_all.clone()).collect();
        for fs in object_tuples(&pools) {
            for c in &perms {
                // h_i ranges over unsigned automorphisms of each source
                let h_pools: Vec<Vec<Perm>> =
                    fs.iter().map(|f| Perm::enumerate(object_arity(f))).collect();
                for hs in perm_cartesian(&h_pools) {
                    let precomposed: Vec<LabelledFiberMap> = fs
                        .iter()
                        .zip(&hs)
                        .map(|(f, h)| {
                            let auto = SignedPermutation::new(vec![Label::Pos; h.size()], h.clone());
                            f.right_action(&auto)
                        })
                        .collect();
                    let lhs = lambda(c, &precomposed);
                    let inv = c.inverse();
                    let ordered_hs: Vec<Perm> =
                        (0..m).map(|t| hs[inv.apply(t)].clone()).collect();
                    let sum = direct_sum(&ordered_hs);
                    let auto = SignedPermutation::new(vec![Label::Pos; sum.size()], sum);
                    let rhs = lambda(c, &fs).right_action(&auto);
                    report.equivariance_inner.record(lhs == rhs, || {
                        format!("module inner equivariance failed at c={c}")
                    });
                }
            }
        }
    }

    // associativity: exhaustive at target rank 0, sampled at the full cap
    let tight_pools: Vec<Vec<LabelledFiberMap>> =
        (0..=max_j).map(|a| under_objects(a, 0)).collect();
    for m in 0..=max_m {
        for sigma in Perm::enumerate(m) {
            for profile in size_profiles(m, max_j, None) {
                for taus in perm_choices(&profile) {
                    let k: usize = profile.iter().sum();
                    let pools: Vec<Vec<LabelledFiberMap>> = (0..k)
                        .map(|_| tight_pools.iter().flatten().cloned().collect())
                        .collect();
                    for hs in object_tuples(&pools) {
                        check_module_associativity(&mut report, &sigma, &taus, &hs);
                    }
                }
            }
        }
    }
    for _ in 0..samples {
        let m = rng.gen_range(0..=max_m);
        let sigma = Perm::random(&mut rng, m);
        let profile: Vec<usize> = (0..m).map(|_| rng.gen_range(0..=max_j)).collect();
        let taus: Vec<Perm> = profile.iter().map(|&k| Perm::random(&mut rng, k)).collect();
        let k: usize = profile.iter().sum();
        let hs: Vec<LabelledFiberMap> = (0..k)
            .map(|_| {
                let arity = rng.gen_range(0..=max_j);
                let pool = &pool_by_arity[arity];
                pool[rng.gen_range(0..pool.len())].clone()
            })
            .collect();
        check_module_associativity(&mut report, &sigma, &taus, &hs);
    }

    // evaluation square: evaluating the block structure map on the
    // block-permuted letters equals the tuple algebra map on the blockwise
    // evaluations
    for _ in 0..samples {
        let m = rng.gen_range(0..=max_m);
        let sigma = Perm::random(&mut rng, m);
        let fs: Vec<LabelledFiberMap> = (0..m)
            .map(|_| {
                let arity = rng.gen_range(0..=max_j);
                let pool = &pool_by_arity[arity];
                pool[rng.gen_range(0..pool.len())].clone()
            })
            .collect();
        let letter_blocks: Vec<Vec<Letter>> =
            fs.iter().map(|f| random_letters(&mut rng, object_arity(f))).collect();
        let inv = sigma.inverse();
        let mut permuted_letters = Vec::new();
        for t in 0..m {
            permuted_letters.extend_from_slice(&letter_blocks[inv.apply(t)]);
        }
        let lhs = evaluate_tuple(&lambda(&sigma, &fs), &permuted_letters);
        let blocks: Vec<TupleObject> = fs
            .iter()
            .zip(&letter_blocks)
            .map(|(f, ls)| evaluate_tuple(f, ls))
            .collect();
        let rhs = tuple_theta(&sigma, &blocks);
        report
            .evaluation_square
            .record(lhs == rhs, || format!("evaluation square failed at sigma={sigma}"));
    }

    // orbit invariance: exhaustive at arity <= 2 and rank <= 1, sampled wider
    for arity in 0..=2usize {
        let source = arity as i32 - 1;
        for q in -1..=1 {
            if source >= 0 && q < 0 {
                continue;
            }
            for f in enumerate_hom(source, q, DEFAULT_ENUM_CAP).unwrap() {
                for h in SignedPermutation::enumerate(arity) {
                    for letters in letter_tuples(arity) {
                        let lhs = evaluate_tuple(&f.right_action(&h), &letters);
                        let rhs = evaluate_tuple(&f, &h.act_on_tuple(&letters));
                        report.orbit_invariance.record(lhs == rhs, || {
                            format!("orbit invariance failed at f={f} h={h}")
                        });
                    }
                }
            }
        }
    }
    for _ in 0..samples {
        let arity = rng.gen_range(0..=4usize);
        let source = arity as i32 - 1;
        let q = if source < 0 { rng.gen_range(-1..=rank_cap) } else { rng.gen_range(0..=rank_cap) };
        let f = LabelledFiberMap::random(&mut rng, source, q);
        let h = SignedPermutation::random(&mut rng, arity);
        let letters = random_letters(&mut rng, arity);
        let lhs = evaluate_tuple(&f.right_action(&h), &letters);
        let rhs = evaluate_tuple(&f, &h.act_on_tuple(&letters));
        report
            .orbit_invariance
            .record(lhs == rhs, || format!("orbit invariance failed at f={f} h={h}"));
    }

    // bijectivity by counting: on each finite slice (parts, letters) the
    // evaluation identifies pairs exactly up to the free group action, and
    // complete factorization splits it
    for parts in 0..=2usize {
        for letters in 0..=4usize {
            let tuples = enumerate_tuples(parts, letters);
            let m = letters as i32;
            let p = parts as i32;
            let hom = match crate::category::hom_count(m - 1, p - 1) {
                Some(h) => h,
                None => continue,
            };
            let group_order: u128 =
                (1u128 << letters) * (1..=letters as u128).product::<u128>().max(1);
            let pairs = hom * (6u128.pow(letters as u32));
            let expected = pairs / group_order;
            let tuple_count = tuples.len() as u128;
            debug_assert_eq!(tuple_count, count_tuples_unbounded(parts, letters));
            report.bijective_count.record(expected == tuple_count, || {
                format!(
                    "count mismatch at parts={parts} letters={letters}: orbits {expected}, tuples {tuple_count}"
                )
            });
            for t in &tuples {
                let (f, y) = factorize(t);
                let back = evaluate_tuple(&f, &y);
                report
                    .factorization_round_trip
                    .record(back == *t, || format!("factorization failed on a tuple of {parts} words"));
            }
        }
    }

    // factorize after evaluate lands in the same orbit
    for _ in 0..samples.min(100) {
        let arity = rng.gen_range(0..=4usize);
        let source = arity as i32 - 1;
        let q = if source < 0 { rng.gen_range(-1..=2) } else { rng.gen_range(0..=2) };
        let f = LabelledFiberMap::random(&mut rng, source, q);
        let y = random_letters(&mut rng, arity);
        let t = evaluate_tuple(&f, &y);
        let (f2, y2) = factorize(&t);
        if object_arity(&f2) != arity {
            report.factorization_round_trip.record(false, || {
                "factorization changed the arity".to_string()
            });
            continue;
        }
        let mut found = false;
        for h in SignedPermutation::enumerate(arity) {
            if f.right_action(&h) == f2 && h.act_on_tuple(&y2) == y {
                found = true;
                break;
            }
        }
        report
            .factorization_round_trip
            .record(found, || format!("factorization left the orbit of f={f}"));
    }

    // strict monoidality of concatenation and the theta block action
    let small_tuples: Vec<TupleObject> = {
        let mut v = enumerate_tuples(0, 0);
        v.extend(enumerate_tuples(1, 0));
        v.extend(enumerate_tuples(1, 1));
        v.extend(enumerate_tuples(2, 2).into_iter().step_by(7));
        v
    };
    for u in &small_tuples {
        for v in &small_tuples {
            for w in &small_tuples {
                let lhs = tuple_concat(&tuple_concat(u, v), w);
                let rhs = tuple_concat(u, &tuple_concat(v, w));
                report
                    .monoidal_strictness
                    .record(lhs == rhs, || "concatenation not associative".to_string());
            }
            let unit: TupleObject = Vec::new();
            report.monoidal_strictness.record(
                tuple_concat(&unit, u) == *u && tuple_concat(u, &unit) == *u,
                || "unit tuple not neutral".to_string(),
            );
            let swap = Perm::transposition(2, 0, 1);
            let got = tuple_theta(&swap, &[u.clone(), v.clone()]);
            report.monoidal_strictness.record(
                got == tuple_concat(v, u),
                || "theta block action disagrees with direct concatenation".to_string(),
            );
        }
    }

    report
}

fn count_tuples_unbounded(parts: usize, letters: usize) -> u128 {
    // compositions of `letters` into `parts` ordered parts, each <= the
    // truncation, times 6 choices per letter
    fn comp(parts: usize, rest: usize) -> u128 {
        if parts == 0 {
            return if rest == 0 { 1 } else { 0 };
        }
        (0..=rest.min(WORD_TRUNCATION)).map(|l| comp(parts - 1, rest - l)).sum()
    }
    comp(parts, letters) * 6u128.pow(letters as u32)
}

fn letter_tuples(len: usize) -> Vec<Vec<Letter>> {
    let alphabet = all_letters();
    let mut out: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * alphabet.len());
        for prefix in &out {
            for l in &alphabet {
                let mut v = prefix.clone();
                v.push(*l);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

fn perm_cartesian(pools: &[Vec<Perm>]) -> Vec<Vec<Perm>> {
    let mut out: Vec<Vec<Perm>> = vec![Vec::new()];
    for pool in pools {
        let mut next = Vec::with_capacity(out.len() * pool.len());
        for prefix in &out {
            for p in pool {
                let mut v = prefix.clone();
                v.push(p.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out
}

fn check_module_associativity(
    report: &mut ModuleReport,
    sigma: &Perm,
    taus: &[Perm],
    hs: &[LabelledFiberMap],
) {
    let k: usize = taus.iter().map(|t| t.size()).sum();
    assert_eq!(hs.len(), k);
    let lhs = lambda(&block_permutation(sigma, taus), hs);
    let mut inner = Vec::with_capacity(taus.len());
    let mut offset = 0usize;
    for tau in taus {
        let slice = &hs[offset..offset + tau.size()];
        inner.push(lambda(tau, slice));
        offset += tau.size();
    }
    let rhs = lambda(sigma, &inner);
    report
        .associativity
        .record(lhs == rhs, || format!("module associativity failed at sigma={sigma}"));
}

/// A chain generator: a composable string of morphisms (innermost first)
/// together with a module value at the source object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GzGenerator<V> {
    pub base_rank: i32,
    pub arrows: Vec<LabelledFiberMap>,
    pub value: V,
}

impl<V> GzGenerator<V> {
    pub fn degree(&self) -> usize {
        self.arrows.len()
    }

    fn object_rank(&self, i: usize) -> i32 {
        if i == 0 {
            self.base_rank
        } else {
            self.arrows[i - 1].target_rank()
        }
    }
}

/// Face maps of the chain generators: the bottom face pushes the innermost
/// morphism into the value, middle faces compose adjacent morphisms, the
/// top face truncates the string.
pub fn gz_face<V>(
    i: usize,
    generator: &GzGenerator<V>,
    apply: impl Fn(&LabelledFiberMap, &V) -> V,
) -> GzGenerator<V>
where
    V: Clone,
{
    let n = generator.degree();
    assert!(n >= 1, "degree must be positive");
    assert!(i <= n, "face index out of range");
    if i == 0 {
        let first = &generator.arrows[0];
        GzGenerator {
            base_rank: first.target_rank(),
            arrows: generator.arrows[1..].to_vec(),
            value: apply(first, &generator.value),
        }
    } else if i < n {
        let mut arrows = generator.arrows.clone();
        let composed = LabelledFiberMap::compose(&arrows[i], &arrows[i - 1]);
        arrows[i] = composed;
        arrows.remove(i - 1);
        GzGenerator { base_rank: generator.base_rank, arrows, value: generator.value.clone() }
    } else {
        GzGenerator {
            base_rank: generator.base_rank,
            arrows: generator.arrows[..n - 1].to_vec(),
            value: generator.value.clone(),
        }
    }
}

/// Degeneracy maps: insert the identity of the i-th object of the string.
pub fn gz_degeneracy<V>(i: usize, generator: &GzGenerator<V>) -> GzGenerator<V>
where
    V: Clone,
{
    let n = generator.degree();
    assert!(i <= n, "degeneracy index out of range");
    let mut arrows = generator.arrows.clone();
    arrows.insert(i, LabelledFiberMap::identity(generator.object_rank(i)));
    GzGenerator { base_rank: generator.base_rank, arrows, value: generator.value.clone() }
}

/// A composable string in an under-category: the base object is a morphism
/// out of [m-1] and the arrows live under it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnderCatString {
    pub base: LabelledFiberMap,
    pub arrows: Vec<LabelledFiberMap>,
}

impl UnderCatString {
    pub fn degree(&self) -> usize {
        self.arrows.len()
    }

    fn object_rank(&self, i: usize) -> i32 {
        if i == 0 {
            self.base.target_rank()
        } else {
            self.arrows[i - 1].target_rank()
        }
    }

    /// Faces of the under-category nerve: the bottom face composes the
    /// first arrow into the base object.
    pub fn face(&self, i: usize) -> UnderCatString {
        let n = self.degree();
        assert!(n >= 1 && i <= n);
        if i == 0 {
            UnderCatString {
                base: LabelledFiberMap::compose(&self.arrows[0], &self.base),
                arrows: self.arrows[1..].to_vec(),
            }
        } else if i < n {
            let mut arrows = self.arrows.clone();
            let composed = LabelledFiberMap::compose(&arrows[i], &arrows[i - 1]);
            arrows[i] = composed;
            arrows.remove(i - 1);
            UnderCatString { base: self.base.clone(), arrows }
        } else {
            UnderCatString { base: self.base.clone(), arrows: self.arrows[..n - 1].to_vec() }
        }
    }

    pub fn degeneracy(&self, i: usize) -> UnderCatString {
        assert!(i <= self.degree());
        let mut arrows = self.arrows.clone();
        arrows.insert(i, LabelledFiberMap::identity(self.object_rank(i)));
        UnderCatString { base: self.base.clone(), arrows }
    }
}

/// The quotient onto chain generators of the bar construction: the base
/// object is evaluated into the value and the string of arrows survives.
pub fn quotient_q(
    algebra: &InvolutiveAlgebra,
    string: &UnderCatString,
    x: &Tensor,
) -> GzGenerator<Tensor> {
    GzGenerator {
        base_rank: string.base.target_rank(),
        arrows: string.arrows.clone(),
        value: bar_evaluate(algebra, &string.base, x),
    }
}

#[derive(Debug, Clone, Default)]
pub struct SimplicialReport {
    pub face_face: CheckedLaw,
    pub face_degeneracy: CheckedLaw,
    pub degeneracy_degeneracy: CheckedLaw,
    pub quotient_faces: CheckedLaw,
}

impl SimplicialReport {
    pub fn passed(&self) -> bool {
        self.face_face.passed()
            && self.face_degeneracy.passed()
            && self.degeneracy_degeneracy.passed()
            && self.quotient_faces.passed()
    }
}

/// All simplicial identities on random chain generators over the bar
/// construction of the given algebra, plus compatibility of the quotient
/// with faces and degeneracies on sampled under-category strings.
pub fn verify_simplicial(
    algebra: &InvolutiveAlgebra,
    strings: usize,
    quotient_samples: usize,
    seed: u64,
) -> SimplicialReport {
    let mut report = SimplicialReport::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = algebra.dim();
    let ring = algebra.ring();
    let apply = |f: &LabelledFiberMap, t: &Tensor| bar_evaluate(algebra, f, t);

    for _ in 0..strings {
        let n = rng.gen_range(2..=3usize);
        let mut ranks = Vec::with_capacity(n + 1);
        for _ in 0..=n {
            ranks.push(rng.gen_range(0..=2));
        }
        let arrows: Vec<LabelledFiberMap> =
            (0..n).map(|i| LabelledFiberMap::random(&mut rng, ranks[i], ranks[i + 1])).collect();
        let word: Vec<usize> = (0..=ranks[0] as usize).map(|_| rng.gen_range(0..d)).collect();
        let value = Tensor::elementary(d, &word, ring);
        let gen = GzGenerator { base_rank: ranks[0], arrows, value };

        for j in 1..=n {
            for i in 0..j {
                let lhs = gz_face(i, &gz_face(j, &gen, apply), apply);
                let rhs = gz_face(j - 1, &gz_face(i, &gen, apply), apply);
                report.face_face.record(lhs == rhs, || format!("dd failed at i={i} j={j}"));
            }
        }
        for i in 0..=n {
            for j in i..=n {
                let lhs = gz_degeneracy(i, &gz_degeneracy(j, &gen));
                let rhs = gz_degeneracy(j + 1, &gz_degeneracy(i, &gen));
                report
                    .degeneracy_degeneracy
                    .record(lhs == rhs, || format!("ss failed at i={i} j={j}"));
            }
        }
        for j in 0..=n {
            let s = gz_degeneracy(j, &gen);
            report
                .face_degeneracy
                .record(gz_face(j, &s, apply) == gen, || format!("ds identity failed at {j}"));
            report.face_degeneracy.record(gz_face(j + 1, &s, apply) == gen, || {
                format!("ds identity failed at {j}+1")
            });
            for i in 0..j {
                let lhs = gz_face(i, &s, apply);
                let rhs = gz_degeneracy(j - 1, &gz_face(i, &gen, apply));
                report
                    .face_degeneracy
                    .record(lhs == rhs, || format!("ds commute failed at i={i} j={j}"));
            }
            for i in (j + 2)..=(n + 1) {
                let lhs = gz_face(i, &s, apply);
                let rhs = gz_degeneracy(j, &gz_face(i - 1, &gen, apply));
                report
                    .face_degeneracy
                    .record(lhs == rhs, || format!("ds commute failed at i={i} j={j}"));
            }
        }
    }

    for _ in 0..quotient_samples {
        let m = rng.gen_range(0..=3usize);
        let source = m as i32 - 1;
        let q0 = if source < 0 { rng.gen_range(-1..=2) } else { rng.gen_range(0..=2) };
        let base = LabelledFiberMap::random(&mut rng, source, q0);
        let n = rng.gen_range(1..=2usize);
        let mut ranks = vec![q0];
        for _ in 0..n {
            ranks.push(rng.gen_range(0..=2));
        }
        let arrows: Vec<LabelledFiberMap> =
            (0..n).map(|i| LabelledFiberMap::random(&mut rng, ranks[i], ranks[i + 1])).collect();
        let string = UnderCatString { base, arrows };
        let word: Vec<usize> = (0..m).map(|_| rng.gen_range(0..d)).collect();
        let x = Tensor::elementary(d, &word, ring);
        for i in 0..=n {
            let lhs = quotient_q(algebra, &string.face(i), &x);
            let rhs = gz_face(i, &quotient_q(algebra, &string, &x), apply);
            report
                .quotient_faces
                .record(lhs == rhs, || format!("quotient does not commute with face {i}"));
            let lhs = quotient_q(algebra, &string.degeneracy(i), &x);
            let rhs = gz_degeneracy(i, &quotient_q(algebra, &string, &x));
            report
                .quotient_faces
                .record(lhs == rhs, || format!("quotient does not commute with degeneracy {i}"));
        }
        if m >= 1 {
            let h = SignedPermutation::random(&mut rng, m);
            let auto = LabelledFiberMap::from_automorphism(&h);
            let moved = UnderCatString {
                base: LabelledFiberMap::compose(&string.base, &auto),
                arrows: string.arrows.clone(),
            };
            let lhs = quotient_q(algebra, &moved, &x);
            let rhs = quotient_q(algebra, &string, &bar_evaluate(algebra, &auto, &x));
            report
                .quotient_faces
                .record(lhs == rhs, || "quotient not constant on identification orbits".into());
        }
    }

    report
}
