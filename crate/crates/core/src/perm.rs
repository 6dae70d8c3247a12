//! Permutations of `{0, …, n-1}`, the Hamming metric, group closure and
//! exhaustive distance / covering-radius search.
//!
//! Permutations act on the right: `compose(g, h)` maps `i` to `(i^g)^h`.

use std::hash::Hasher;
use std::sync::atomic::{AtomicU64, Ordering};

use hashbrown::HashTable;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Element-count ceiling for materialized groups.
pub const MAX_MATERIALIZED_ELEMENTS: u64 = 20_000_000;
/// Byte ceiling for a materialized element table.
pub const MAX_MATERIALIZED_BYTES: u64 = 4 << 30;
/// Default degree bound for the full `Sym_n` sweep.
pub const DEFAULT_SWEEP_DEGREE: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("permutations act on {left} and {right} points")]
    DomainMismatch { left: usize, right: usize },
    #[error("image table is not a bijection of 0..{0}")]
    NotBijection(usize),
    #[error("group elements are not materialized")]
    Unmaterialized,
    #[error("degree {degree} exceeds the sweep bound {bound}; use bounds-only mode")]
    DegreeTooLarge { degree: usize, bound: usize },
    #[error("search budget of {0} comparisons exhausted")]
    BudgetExhausted(u64),
    #[error("closure exceeded the order cap {0}")]
    CapExceeded(u64),
    #[error("no generators given")]
    NoGenerators,
    #[error("materializing {elements} permutations of degree {degree} exceeds the memory policy")]
    MemoryPolicy { elements: u64, degree: usize },
    #[error("stream mode needs the two-point stabilizer of points 0 and 1")]
    MissingPairStabilizer,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n as u32).collect() }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(PermError::NotBijection(n));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Caller guarantees bijectivity.
    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[u32]]) -> Result<Self, PermError> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        for c in cycles {
            for (k, &x) in c.iter().enumerate() {
                let slot = images.get_mut(x as usize).ok_or(PermError::NotBijection(n))?;
                *slot = c[(k + 1) % c.len()];
            }
        }
        Permutation::from_images(images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn into_images(self) -> Vec<u32> {
        self.images
    }

    #[inline]
    pub fn apply(&self, i: u32) -> u32 {
        self.images[i as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        self.same_domain(other)?;
        Ok(self.then(other))
    }

    /// `self` then `other`; panics on a degree mismatch.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, k: i64) -> Permutation {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Permutation::identity(self.degree());
        for _ in 0..k.unsigned_abs() {
            out = out.then(&base);
        }
        out
    }

    /// Least `k ≥ 1` with `self^k = 1`.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.degree()];
        let mut order = 1u64;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                len += 1;
            }
            order = order / crate::field::gcd(order, len) * len;
        }
        order
    }

    pub fn fix_count(&self) -> usize {
        self.images.iter().enumerate().filter(|(i, &x)| *i as u32 == x).count()
    }

    /// Lengths of the cycles through each point, in point order of first visit.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                len += 1;
            }
            out.push(len);
        }
        out
    }

    fn same_domain(&self, other: &Permutation) -> Result<(), PermError> {
        if self.degree() == other.degree() {
            Ok(())
        } else {
            Err(PermError::DomainMismatch { left: self.degree(), right: other.degree() })
        }
    }
}

/// Number of points where the two image tables agree, i.e. `|fix(g h⁻¹)|`.
#[inline]
pub fn agreements(g: &[u32], h: &[u32]) -> usize {
    g.iter().zip(h).filter(|(a, b)| a == b).count()
}

/// Hamming distance `n - |fix(g h⁻¹)|`.
pub fn hamming(g: &Permutation, h: &Permutation) -> Result<usize, PermError> {
    g.same_domain(h)?;
    Ok(g.degree() - agreements(&g.images, &h.images))
}

/// Canonically sorted element table, stored flat.
#[derive(Debug, Clone)]
pub struct ElementList {
    degree: usize,
    data: Vec<u32>,
}

impl ElementList {
    pub fn len(&self) -> usize {
        if self.degree == 0 {
            0
        } else {
            self.data.len() / self.degree
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn get(&self, i: usize) -> &[u32] {
        &self.data[i * self.degree..(i + 1) * self.degree]
    }

    pub fn iter(&self) -> std::slice::ChunksExact<'_, u32> {
        self.data.chunks_exact(self.degree)
    }

    pub fn position(&self, images: &[u32]) -> Option<usize> {
        if images.len() != self.degree {
            return None;
        }
        let (mut lo, mut hi) = (0usize, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(images) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    pub fn contains(&self, images: &[u32]) -> bool {
        self.position(images).is_some()
    }

    pub fn permutation(&self, i: usize) -> Permutation {
        Permutation::from_images_unchecked(self.get(i).to_vec())
    }
}

/// Which group a handle holds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupLabel {
    pub family: String,
    pub q: u32,
    pub variant: String,
}

impl GroupLabel {
    pub fn new(family: &str, q: u32, variant: &str) -> Self {
        GroupLabel { family: family.to_string(), q, variant: variant.to_string() }
    }

    pub fn anonymous() -> Self {
        GroupLabel::new("generated", 0, "")
    }
}

/// A generated permutation group.
#[derive(Debug, Clone)]
pub struct GroupHandle {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Option<ElementList>,
    order: u64,
    pub label: GroupLabel,
    pair_stabilizer: Option<Vec<Permutation>>,
}

impl GroupHandle {
    /// A handle without materialized elements. `pair_stabilizer` lists the
    /// full stabilizer of points 0 and 1, enabling stream enumeration.
    pub fn unmaterialized(
        degree: usize,
        generators: Vec<Permutation>,
        order: u64,
        label: GroupLabel,
        pair_stabilizer: Option<Vec<Permutation>>,
    ) -> Self {
        GroupHandle { degree, generators, elements: None, order, label, pair_stabilizer }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> Option<&ElementList> {
        self.elements.as_ref()
    }

    pub fn is_materialized(&self) -> bool {
        self.elements.is_some()
    }

    pub fn pair_stabilizer(&self) -> Option<&[Permutation]> {
        self.pair_stabilizer.as_deref()
    }

    pub fn set_pair_stabilizer(&mut self, stabilizer: Vec<Permutation>) {
        self.pair_stabilizer = Some(stabilizer);
    }

    pub fn with_label(mut self, label: GroupLabel) -> Self {
        self.label = label;
        self
    }

    /// Membership; requires materialized elements.
    pub fn contains(&self, g: &Permutation) -> Result<bool, PermError> {
        let els = self.elements.as_ref().ok_or(PermError::Unmaterialized)?;
        Ok(els.contains(g.images()))
    }

    /// Stabilizer of points 0 and 1, filtered from the element list.
    pub fn pair_stabilizer_from_elements(&self) -> Result<Vec<Permutation>, PermError> {
        let els = self.elements.as_ref().ok_or(PermError::Unmaterialized)?;
        Ok(els
            .iter()
            .filter(|g| g[0] == 0 && g.get(1) == Some(&1))
            .map(|g| Permutation::from_images_unchecked(g.to_vec()))
            .collect())
    }
}

/// Rejects materialization beyond the memory policy.
pub fn check_materialize(elements: u64, degree: usize) -> Result<(), PermError> {
    let bytes = elements.saturating_mul(degree as u64).saturating_mul(4);
    if elements > MAX_MATERIALIZED_ELEMENTS || bytes > MAX_MATERIALIZED_BYTES {
        Err(PermError::MemoryPolicy { elements, degree })
    } else {
        Ok(())
    }
}

fn slice_hash(s: &[u32]) -> u64 {
    let mut h = std::collections::hash_map::DefaultHasher::new();
    // Hashing a prefix and the tail is enough to spread group elements and
    // much cheaper than the full table at large degree.
    let n = s.len();
    if n <= 16 {
        for &x in s {
            h.write_u32(x);
        }
    } else {
        for &x in &s[..8] {
            h.write_u32(x);
        }
        for &x in &s[n - 8..] {
            h.write_u32(x);
        }
        h.write_u32(s[n / 2]);
    }
    h.finish()
}

/// Breadth-first closure of `generators` under composition.
pub fn closure_generate(generators: &[Permutation], order_cap: u64) -> Result<GroupHandle, PermError> {
    let first = generators.first().ok_or(PermError::NoGenerators)?;
    let n = first.degree();
    for g in generators {
        first.same_domain(g)?;
    }
    let mut arena: Vec<u32> = (0..n as u32).collect();
    let mut table: HashTable<u32> = HashTable::new();
    table.insert_unique(slice_hash(&arena[..n]), 0, |&i| {
        slice_hash(&arena[i as usize * n..(i as usize + 1) * n])
    });
    let mut count = 1u64;
    let mut frontier_start = 0usize;
    let mut scratch = vec![0u32; n];
    loop {
        let frontier_end = count as usize;
        if frontier_start == frontier_end {
            break;
        }
        for e in frontier_start..frontier_end {
            for g in generators {
                for i in 0..n {
                    scratch[i] = g.images[arena[e * n + i] as usize];
                }
                let hash = slice_hash(&scratch);
                let found = table
                    .find(hash, |&idx| &arena[idx as usize * n..(idx as usize + 1) * n] == scratch.as_slice())
                    .is_some();
                if found {
                    continue;
                }
                if count >= order_cap {
                    return Err(PermError::CapExceeded(order_cap));
                }
                let idx = count as u32;
                arena.extend_from_slice(&scratch);
                let arena_ref = &arena;
                table.insert_unique(hash, idx, |&i| {
                    slice_hash(&arena_ref[i as usize * n..(i as usize + 1) * n])
                });
                count += 1;
            }
        }
        frontier_start = frontier_end;
    }
    drop(table);
    let mut order: Vec<u32> = (0..count as u32).collect();
    order.par_sort_unstable_by(|&a, &b| {
        arena[a as usize * n..(a as usize + 1) * n].cmp(&arena[b as usize * n..(b as usize + 1) * n])
    });
    let mut data = Vec::with_capacity(arena.len());
    for idx in order {
        data.extend_from_slice(&arena[idx as usize * n..(idx as usize + 1) * n]);
    }
    Ok(GroupHandle {
        degree: n,
        generators: generators.to_vec(),
        elements: Some(ElementList { degree: n, data }),
        order: count,
        label: GroupLabel::anonymous(),
        pair_stabilizer: None,
    })
}

/// Orbit of the ordered pair `(a, b)` under the generators, with a Schreier
/// vector for reconstructing transversal elements.
pub struct PairOrbit {
    degree: usize,
    /// Encoded pairs `i * n + j` in breadth-first order.
    pub pairs: Vec<u32>,
    parent: Vec<u32>,
    label: Vec<u32>,
}

const UNSEEN: u32 = u32::MAX;

impl PairOrbit {
    pub fn compute(generators: &[Permutation], a: u32, b: u32) -> Self {
        let n = generators.first().map_or(0, Permutation::degree);
        let mut parent = vec![UNSEEN; n * n];
        let mut label = vec![UNSEEN; n * n];
        let start = a * n as u32 + b;
        parent[start as usize] = start;
        let mut pairs = vec![start];
        let mut head = 0;
        while head < pairs.len() {
            let cur = pairs[head];
            head += 1;
            let (i, j) = (cur / n as u32, cur % n as u32);
            for (k, g) in generators.iter().enumerate() {
                let next = g.apply(i) * n as u32 + g.apply(j);
                if parent[next as usize] == UNSEEN {
                    parent[next as usize] = cur;
                    label[next as usize] = k as u32;
                    pairs.push(next);
                }
            }
        }
        PairOrbit { degree: n, pairs, parent, label }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// An element mapping the base pair to `pair`.
    pub fn transversal(&self, generators: &[Permutation], pair: u32) -> Permutation {
        let mut word = Vec::new();
        let mut cur = pair;
        while self.parent[cur as usize] != cur {
            word.push(self.label[cur as usize]);
            cur = self.parent[cur as usize];
        }
        let mut t = Permutation::identity(self.degree);
        for &k in word.iter().rev() {
            t = t.then(&generators[k as usize]);
        }
        t
    }
}

/// Whether the group generated by `generators` is `t`-transitive, by
/// computing the orbit of `(0, 1, …, t-1)` on ordered `t`-tuples.
pub fn is_t_transitive(generators: &[Permutation], t: usize) -> bool {
    let n = match generators.first() {
        Some(g) => g.degree(),
        None => return false,
    };
    if t > n {
        return false;
    }
    let target: u64 = (0..t).map(|k| (n - k) as u64).product();
    if t == 2 {
        return PairOrbit::compute(generators, 0, 1).len() as u64 == target;
    }
    let encode = |tuple: &[u32]| tuple.iter().fold(0u64, |acc, &x| acc * n as u64 + x as u64);
    let start: Vec<u32> = (0..t as u32).collect();
    let mut seen = std::collections::HashSet::new();
    seen.insert(encode(&start));
    let mut queue = vec![start];
    while let Some(cur) = queue.pop() {
        for g in generators {
            let next: Vec<u32> = cur.iter().map(|&x| g.apply(x)).collect();
            if seen.insert(encode(&next)) {
                queue.push(next);
            }
        }
    }
    seen.len() as u64 == target
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DistanceMode {
    Brute,
    Stream,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Distance {
    pub distance: usize,
    /// Lexicographically least group element attaining the distance.
    pub witness: Permutation,
}

/// Better candidate: more agreements, then lexicographically smaller.
fn better(a: (usize, &[u32]), b: (usize, &[u32])) -> bool {
    a.0 > b.0 || (a.0 == b.0 && a.1 < b.1)
}

/// `min_{g ∈ G} d(v, g)` with a witness.
pub fn distance_to_group(v: &Permutation, group: &GroupHandle, mode: DistanceMode) -> Result<Distance, PermError> {
    if v.degree() != group.degree {
        return Err(PermError::DomainMismatch { left: v.degree(), right: group.degree });
    }
    let n = v.degree();
    let (agree, witness) = match mode {
        DistanceMode::Brute => {
            let els = group.elements.as_ref().ok_or(PermError::Unmaterialized)?;
            let best = els
                .data
                .par_chunks_exact(n)
                .enumerate()
                .map(|(i, g)| (agreements(g, v.images()), i))
                // ties go to the smaller index, which is the lexicographically smaller element
                .reduce(|| (0, usize::MAX), |a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a });
            (best.0, els.permutation(best.1))
        }
        DistanceMode::Stream => {
            let stab = group.pair_stabilizer.as_ref().ok_or(PermError::MissingPairStabilizer)?;
            let gens = &group.generators;
            let orbit = PairOrbit::compute(gens, 0, 1);
            orbit
                .pairs
                .par_iter()
                .map(|&pair| {
                    let t = orbit.transversal(gens, pair);
                    let mut best: Option<(usize, Vec<u32>)> = None;
                    for y in stab {
                        let g = y.then(&t);
                        let a = agreements(g.images(), v.images());
                        let replace = match &best {
                            None => true,
                            Some((ba, bg)) => better((a, g.images()), (*ba, bg)),
                        };
                        if replace {
                            best = Some((a, g.into_images()));
                        }
                    }
                    best.expect("stabilizer contains the identity")
                })
                .reduce_with(|a, b| if better((b.0, &b.1), (a.0, &a.1)) { b } else { a })
                .map(|(a, g)| (a, Permutation::from_images_unchecked(g)))
                .expect("orbit is nonempty")
        }
    };
    Ok(Distance { distance: n - agree, witness })
}

/// Iterates the elements of a group given as `stabilizer × transversal`,
/// without storing them. Calls `f` once per element.
pub fn for_each_streamed<F>(group: &GroupHandle, mut f: F) -> Result<u64, PermError>
where
    F: FnMut(&Permutation),
{
    let stab = group.pair_stabilizer.as_ref().ok_or(PermError::MissingPairStabilizer)?;
    let orbit = PairOrbit::compute(&group.generators, 0, 1);
    let mut count = 0;
    for &pair in &orbit.pairs {
        let t = orbit.transversal(&group.generators, pair);
        for y in stab {
            f(&y.then(&t));
            count += 1;
        }
    }
    Ok(count)
}

/// Advances `v` to its lexicographic successor; false at the last one.
pub fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringRadius {
    pub radius: usize,
    /// Lexicographically first permutation attaining the radius.
    pub witness: Permutation,
    pub comparisons: u64,
}

struct PartResult {
    radius: usize,
    witness: Vec<u32>,
}

/// Exact covering radius `max_{v ∈ Sym_n} d(v, G)` by a full sweep of `Sym_n`.
///
/// The sweep is split by the image of point 0; each part tracks its own best
/// radius `L` and abandons `v` as soon as some `g` agrees with it on at least
/// `n - L` points. Parts are merged by maximum, ties to the earlier part.
pub fn covering_radius_exact(
    group: &GroupHandle,
    budget: u64,
    max_degree: usize,
) -> Result<CoveringRadius, PermError> {
    let n = group.degree;
    if n > max_degree {
        return Err(PermError::DegreeTooLarge { degree: n, bound: max_degree });
    }
    let els = group.elements.as_ref().ok_or(PermError::Unmaterialized)?;
    if n == 0 {
        return Ok(CoveringRadius { radius: 0, witness: Permutation::identity(0), comparisons: 0 });
    }
    let used = AtomicU64::new(0);
    let parts: Result<Vec<PartResult>, PermError> = (0..n as u32)
        .into_par_iter()
        .map(|first| {
            let mut v: Vec<u32> = std::iter::once(first).chain((0..n as u32).filter(|&x| x != first)).collect();
            let mut best = PartResult { radius: 0, witness: Vec::new() };
            let mut local = 0u64;
            loop {
                let threshold = n - best.radius;
                let mut max_agree = 0;
                for g in els.iter() {
                    local += 1;
                    let a = agreements(g, &v);
                    if a > max_agree {
                        max_agree = a;
                        if a >= threshold {
                            break;
                        }
                    }
                }
                if max_agree < threshold || best.witness.is_empty() {
                    let d = n - max_agree;
                    if d > best.radius || best.witness.is_empty() {
                        best.radius = d;
                        best.witness = v.clone();
                    }
                }
                if local >= 1 << 20 {
                    let total = used.fetch_add(local, Ordering::Relaxed) + local;
                    local = 0;
                    if total > budget {
                        return Err(PermError::BudgetExhausted(budget));
                    }
                }
                if !next_permutation(&mut v[1..]) {
                    break;
                }
            }
            used.fetch_add(local, Ordering::Relaxed);
            Ok(best)
        })
        .collect();
    let parts = parts?;
    let comparisons = used.load(Ordering::Relaxed);
    if comparisons > budget {
        return Err(PermError::BudgetExhausted(budget));
    }
    let mut best = &parts[0];
    for p in &parts[1..] {
        if p.radius > best.radius {
            best = p;
        }
    }
    Ok(CoveringRadius {
        radius: best.radius,
        witness: Permutation::from_images_unchecked(best.witness.clone()),
        comparisons,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cycle3() -> Permutation {
        Permutation::from_images(vec![1, 2, 0]).unwrap()
    }

    #[test]
    fn compose_and_inverse_basics() {
        let g = cycle3();
        assert_eq!(g.compose(&Permutation::identity(3)).unwrap(), g);
        assert_eq!(g.inverse().images(), &[2, 0, 1]);
        assert!(g.compose(&g.inverse()).unwrap().is_identity());
        let a = Permutation::from_images(vec![1, 0, 2]).unwrap();
        // right action: 0 -a-> 1 -g-> 2
        assert_eq!(a.then(&g).apply(0), 2);
        assert!(matches!(g.compose(&Permutation::identity(4)), Err(PermError::DomainMismatch { .. })));
    }

    #[test]
    fn rejects_non_bijections() {
        assert_eq!(Permutation::from_images(vec![0, 0, 1]), Err(PermError::NotBijection(3)));
        assert_eq!(Permutation::from_images(vec![0, 3, 1]), Err(PermError::NotBijection(3)));
    }

    #[test]
    fn fix_count_and_hamming_small() {
        assert_eq!(Permutation::identity(7).fix_count(), 7);
        assert_eq!(cycle3().fix_count(), 0);
        let g = cycle3();
        let h = g.inverse();
        assert_eq!(hamming(&g, &g).unwrap(), 0);
        assert_eq!(hamming(&g, &h).unwrap(), 3);
    }

    #[test]
    fn hamming_never_n_minus_one() {
        for n in 1..=6usize {
            let mut v: Vec<u32> = (0..n as u32).collect();
            loop {
                let p = Permutation::from_images(v.clone()).unwrap();
                assert_ne!(p.fix_count() + 1, n, "{v:?}");
                if !next_permutation(&mut v) {
                    break;
                }
            }
        }
    }

    #[test]
    fn successor_enumerates_factorial_many() {
        let mut v: Vec<u32> = (0..5).collect();
        let mut count = 1;
        while next_permutation(&mut v) {
            count += 1;
        }
        assert_eq!(count, 120);
        assert_eq!(v, vec![4, 3, 2, 1, 0]);
    }

    #[test]
    fn closure_of_a_three_cycle() {
        let g = closure_generate(&[cycle3()], 100).unwrap();
        assert_eq!(g.order(), 3);
        assert!(g.contains(&Permutation::identity(3)).unwrap());
    }

    #[test]
    fn closure_cap() {
        let a = Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap();
        let b = Permutation::from_cycles(5, &[&[0, 1]]).unwrap();
        assert_eq!(closure_generate(&[a.clone(), b.clone()], 119).unwrap_err(), PermError::CapExceeded(119));
        let s5 = closure_generate(&[a, b], 120).unwrap();
        assert_eq!(s5.order(), 120);
        assert!(is_t_transitive(s5.generators(), 5));
    }

    #[test]
    fn closure_is_closed_and_sorted() {
        let a = Permutation::from_cycles(6, &[&[0, 1, 2], &[3, 4]]).unwrap();
        let b = Permutation::from_cycles(6, &[&[1, 5]]).unwrap();
        let g = closure_generate(&[a, b], 10_000).unwrap();
        let els = g.elements().unwrap();
        for i in 0..els.len() {
            if i > 0 {
                assert!(els.get(i - 1) < els.get(i));
            }
            for j in 0..els.len() {
                let prod = els.permutation(i).then(&els.permutation(j));
                assert!(els.contains(prod.images()));
            }
        }
    }

    #[test]
    fn symmetric_group_has_radius_zero() {
        let a = Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        let b = Permutation::from_cycles(4, &[&[0, 1]]).unwrap();
        let s4 = closure_generate(&[a, b], 24).unwrap();
        let cr = covering_radius_exact(&s4, u64::MAX, DEFAULT_SWEEP_DEGREE).unwrap();
        assert_eq!(cr.radius, 0);
    }

    #[test]
    fn trivial_group_radius_is_n() {
        // Derangements exist for n ≥ 2, so d(v, {1}) reaches n.
        let g = closure_generate(&[Permutation::identity(5)], 10).unwrap();
        let cr = covering_radius_exact(&g, u64::MAX, DEFAULT_SWEEP_DEGREE).unwrap();
        assert_eq!(cr.radius, 5);
        assert_eq!(cr.witness.fix_count(), 0);
    }

    #[test]
    fn radius_agrees_with_unpruned_sweep() {
        // dihedral group of the pentagon
        let r = Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap();
        let s = Permutation::from_cycles(5, &[&[1, 4], &[2, 3]]).unwrap();
        let d5 = closure_generate(&[r, s], 100).unwrap();
        let mut v: Vec<u32> = (0..5).collect();
        let mut brute = 0;
        loop {
            let p = Permutation::from_images(v.clone()).unwrap();
            brute = brute.max(distance_to_group(&p, &d5, DistanceMode::Brute).unwrap().distance);
            if !next_permutation(&mut v) {
                break;
            }
        }
        let cr = covering_radius_exact(&d5, u64::MAX, DEFAULT_SWEEP_DEGREE).unwrap();
        assert_eq!(cr.radius, brute);
        assert_eq!(distance_to_group(&cr.witness, &d5, DistanceMode::Brute).unwrap().distance, brute);
    }

    #[test]
    fn sweep_bounds() {
        let g = closure_generate(&[Permutation::identity(11)], 10).unwrap();
        assert_eq!(
            covering_radius_exact(&g, u64::MAX, DEFAULT_SWEEP_DEGREE).unwrap_err(),
            PermError::DegreeTooLarge { degree: 11, bound: 10 }
        );
        let g = closure_generate(&[Permutation::identity(8)], 10).unwrap();
        assert_eq!(covering_radius_exact(&g, 10, 8).unwrap_err(), PermError::BudgetExhausted(10));
    }

    #[test]
    fn brute_mode_needs_elements() {
        let g = GroupHandle::unmaterialized(3, vec![cycle3()], 3, GroupLabel::anonymous(), None);
        assert_eq!(distance_to_group(&cycle3(), &g, DistanceMode::Brute).unwrap_err(), PermError::Unmaterialized);
        assert_eq!(
            distance_to_group(&cycle3(), &g, DistanceMode::Stream).unwrap_err(),
            PermError::MissingPairStabilizer
        );
    }

    #[test]
    fn stream_and_brute_agree_on_s4() {
        let a = Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        let b = Permutation::from_cycles(4, &[&[0, 1]]).unwrap();
        let mut s4 = closure_generate(&[a, b], 24).unwrap();
        let stab = s4.pair_stabilizer_from_elements().unwrap();
        assert_eq!(stab.len(), 2);
        s4.set_pair_stabilizer(stab);
        let mut seen = std::collections::BTreeSet::new();
        assert_eq!(for_each_streamed(&s4, |g| { seen.insert(g.clone()); }).unwrap(), 24);
        assert_eq!(seen.len(), 24);
        let v = Permutation::from_images(vec![3, 1, 0, 2]).unwrap();
        assert_eq!(
            distance_to_group(&v, &s4, DistanceMode::Brute).unwrap(),
            distance_to_group(&v, &s4, DistanceMode::Stream).unwrap()
        );
    }

    #[test]
    fn memory_policy() {
        assert!(check_materialize(62_400, 65).is_ok());
        assert!(check_materialize(212_747_040, 1332).is_err());
        assert!(check_materialize(16_547_328, 513).is_err());
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n as u32).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn metric_axioms(n in 1usize..200, seed in any::<u64>()) {
            use rand::{seq::SliceRandom, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut mk = || {
                let mut v: Vec<u32> = (0..n as u32).collect();
                v.shuffle(&mut rng);
                Permutation::from_images(v).unwrap()
            };
            let (a, b, c) = (mk(), mk(), mk());
            let ab = hamming(&a, &b).unwrap();
            prop_assert_eq!(ab, hamming(&b, &a).unwrap());
            prop_assert_eq!(hamming(&a, &a).unwrap(), 0);
            prop_assert_eq!(ab == 0, a == b);
            prop_assert!(hamming(&a, &c).unwrap() <= ab + hamming(&b, &c).unwrap());
            prop_assert!(a.then(&a.inverse()).is_identity());
            prop_assert_eq!(ab, n - a.then(&b.inverse()).fix_count());
        }

        #[test]
        fn distance_constant_on_cosets(v in arb_perm(6), gi in 0usize..60) {
            let r = Permutation::from_cycles(6, &[&[0, 1, 2, 3, 4]]).unwrap();
            let s = Permutation::from_cycles(6, &[&[0, 1], &[2, 4], &[3, 5]]).unwrap();
            let g = closure_generate(&[r, s], 1000).unwrap();
            let x = g.elements().unwrap().permutation(gi % g.order() as usize);
            let d = distance_to_group(&v, &g, DistanceMode::Brute).unwrap().distance;
            prop_assert_eq!(distance_to_group(&v.then(&x), &g, DistanceMode::Brute).unwrap().distance, d);
            prop_assert_eq!(distance_to_group(&x.then(&v), &g, DistanceMode::Brute).unwrap().distance, d);
        }
    }
}
