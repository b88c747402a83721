//! Finite groups as dense Cayley tables.
//!
//! Elements are indices `0..order`. Every constructor validates the group
//! axioms (the associativity sweep is exhaustive up to order 512, which
//! covers everything this crate is used for in anger). All values are
//! immutable after construction and shared through `Arc`.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Order cap for closure-style constructors.
pub const DEFAULT_ORDER_CAP: usize = 2048;

const ASSOC_CHECK_LIMIT: usize = 512;

#[derive(Debug)]
pub struct FiniteGroup {
    label: String,
    order: usize,
    cayley: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.identity == other.identity && self.cayley == other.cayley
    }
}
impl Eq for FiniteGroup {}

/// Two handles denote the same group if they are the same allocation or
/// structurally identical tables.
pub fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl FiniteGroup {
    /// Builds a group from a raw Cayley table, checking the group axioms.
    pub fn from_cayley(label: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Arc<Self>> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidCayley("empty table".into()));
        }
        let mut cayley = Vec::with_capacity(n * n);
        for row in &table {
            if row.len() != n {
                return Err(Error::InvalidCayley("table is not square".into()));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::InvalidCayley(format!("entry {v} out of range")));
                }
                cayley.push(v);
            }
        }
        Self::from_flat(label, n, cayley)
    }

    fn from_flat(label: impl Into<String>, n: usize, cayley: Vec<usize>) -> Result<Arc<Self>> {
        // Latin square check.
        for i in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for j in 0..n {
                let r = cayley[i * n + j];
                let c = cayley[j * n + i];
                if seen_row[r] || seen_col[c] {
                    return Err(Error::InvalidCayley(format!(
                        "row or column {i} is not a permutation"
                    )));
                }
                seen_row[r] = true;
                seen_col[c] = true;
            }
        }
        // Identity.
        let mut identity = None;
        'outer: for e in 0..n {
            for g in 0..n {
                if cayley[e * n + g] != g || cayley[g * n + e] != g {
                    continue 'outer;
                }
            }
            identity = Some(e);
            break;
        }
        let identity =
            identity.ok_or_else(|| Error::InvalidCayley("no two-sided identity".into()))?;
        // Inverses.
        let mut inverse = vec![0usize; n];
        for g in 0..n {
            let mut found = None;
            for h in 0..n {
                if cayley[g * n + h] == identity && cayley[h * n + g] == identity {
                    found = Some(h);
                    break;
                }
            }
            inverse[g] =
                found.ok_or_else(|| Error::InvalidCayley(format!("element {g} has no inverse")))?;
        }
        // Associativity, exhaustive for small orders.
        if n <= ASSOC_CHECK_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = cayley[a * n + b];
                    for c in 0..n {
                        if cayley[ab * n + c] != cayley[a * n + cayley[b * n + c]] {
                            return Err(Error::InvalidCayley(format!(
                                "associativity fails at ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(Arc::new(FiniteGroup {
            label: label.into(),
            order: n,
            cayley,
            identity,
            inverse,
        }))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `g x g^{-1}`.
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.order
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Exponent of the group: lcm of all element orders.
    pub fn exponent(&self) -> usize {
        let mut e = 1usize;
        for g in self.elements() {
            e = num_integer::lcm(e, self.element_order(g));
        }
        e
    }

    pub fn is_abelian(&self) -> bool {
        for a in 0..self.order {
            for b in 0..a {
                if self.mul(a, b) != self.mul(b, a) {
                    return false;
                }
            }
        }
        true
    }

    /// Power `g^k` for any integer exponent.
    pub fn pow(&self, g: usize, k: i64) -> usize {
        let n = self.element_order(g) as i64;
        let mut k = k.rem_euclid(n);
        let mut acc = self.identity;
        let mut base = g;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Conjugacy classes: the identity class first, remaining classes ordered
    /// by their minimal element index; each class sorted ascending.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.order];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..self.order {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut class = Vec::new();
            for g in 0..self.order {
                let y = self.conj(g, x);
                if class_of[y] == usize::MAX {
                    class_of[y] = id;
                    class.push(y);
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        // Scanning x in increasing order already yields classes sorted by
        // minimal element; move the identity class to the front.
        let idpos = classes
            .iter()
            .position(|c| c.contains(&self.identity))
            .expect("identity class");
        classes.swap(0, idpos);
        // Swapping may disturb by-minimum order of the rest; restore it.
        classes[1..].sort_by_key(|c| c[0]);
        classes
    }

    /// Map element -> index of its conjugacy class (same order as
    /// `conjugacy_classes`).
    pub fn class_index(&self) -> (Vec<Vec<usize>>, Vec<usize>) {
        let classes = self.conjugacy_classes();
        let mut idx = vec![0usize; self.order];
        for (i, c) in classes.iter().enumerate() {
            for &x in c {
                idx[x] = i;
            }
        }
        (classes, idx)
    }
}

/// Builds the closure of a set of permutations of `{0..degree-1}` given in
/// image notation, together with its Cayley table.
pub fn from_permutation_generators(
    degree: usize,
    generators: &[Vec<usize>],
    label: impl Into<String>,
) -> Result<Arc<FiniteGroup>> {
    from_permutation_generators_with_cap(degree, generators, label, DEFAULT_ORDER_CAP)
}

pub fn from_permutation_generators_with_cap(
    degree: usize,
    generators: &[Vec<usize>],
    label: impl Into<String>,
    cap: usize,
) -> Result<Arc<FiniteGroup>> {
    for p in generators {
        if p.len() != degree {
            return Err(Error::InvalidPermutation(format!(
                "length {} does not match degree {degree}",
                p.len()
            )));
        }
        let mut seen = vec![false; degree];
        for &v in p {
            if v >= degree || seen[v] {
                return Err(Error::InvalidPermutation(format!(
                    "{p:?} is not a bijection"
                )));
            }
            seen[v] = true;
        }
    }
    let id: Vec<usize> = (0..degree).collect();
    let mut members: Vec<Vec<usize>> = vec![id.clone()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    index.insert(id, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for gen in generators {
            // composition: apply `members[i]` first, then `gen`
            let prod: Vec<usize> = members[i].iter().map(|&v| gen[v]).collect();
            if !index.contains_key(&prod) {
                if members.len() >= cap {
                    return Err(Error::OrderCapExceeded { cap });
                }
                index.insert(prod.clone(), members.len());
                members.push(prod);
                queue.push_back(members.len() - 1);
            }
        }
    }
    let n = members.len();
    let mut cayley = vec![0usize; n * n];
    for a in 0..n {
        for b in 0..n {
            let prod: Vec<usize> = members[b].iter().map(|&v| members[a][v]).collect();
            cayley[a * n + b] = index[&prod];
        }
    }
    FiniteGroup::from_flat(label, n, cayley)
}

/// A subgroup, stored both as element indices of the parent and as an
/// abstract group of its own (so character tables etc. can be computed on
/// it directly).
#[derive(Debug, Clone)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    elements: Vec<usize>,
    position: HashMap<usize, usize>,
    group: Arc<FiniteGroup>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.parent, &other.parent) && self.elements == other.elements
    }
}
impl Eq for Subgroup {}

impl Subgroup {
    /// Checks closure and builds the abstract copy. `elements` may be given
    /// in any order and with duplicates.
    pub fn new(parent: Arc<FiniteGroup>, elements: Vec<usize>) -> Result<Self> {
        let mut elts = elements;
        elts.sort_unstable();
        elts.dedup();
        if elts.iter().any(|&x| x >= parent.order()) {
            return Err(Error::NotASubgroup("element out of range".into()));
        }
        if !elts.contains(&parent.identity()) {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        let inside = |x: usize| elts.binary_search(&x).is_ok();
        for &a in &elts {
            if !inside(parent.inv(a)) {
                return Err(Error::NotASubgroup(format!("inverse of {a} missing")));
            }
            for &b in &elts {
                if !inside(parent.mul(a, b)) {
                    return Err(Error::NotASubgroup(format!("product {a}*{b} escapes")));
                }
            }
        }
        let position: HashMap<usize, usize> =
            elts.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let m = elts.len();
        let mut cayley = vec![0usize; m * m];
        for i in 0..m {
            for j in 0..m {
                cayley[i * m + j] = position[&parent.mul(elts[i], elts[j])];
            }
        }
        let group = FiniteGroup::from_flat(format!("{}:sub{}", parent.label(), m), m, cayley)?;
        Ok(Subgroup {
            parent,
            elements: elts,
            position,
            group,
        })
    }

    /// Subgroup generated by the given elements.
    pub fn generated(parent: Arc<FiniteGroup>, gens: &[usize]) -> Result<Self> {
        if gens.iter().any(|&x| x >= parent.order()) {
            return Err(Error::NotASubgroup("generator out of range".into()));
        }
        let mut seen = vec![false; parent.order()];
        seen[parent.identity()] = true;
        let mut queue = VecDeque::from([parent.identity()]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                for y in [parent.mul(x, g), parent.mul(x, parent.inv(g))] {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        let elements: Vec<usize> = (0..parent.order()).filter(|&x| seen[x]).collect();
        Subgroup::new(parent, elements)
    }

    pub fn full(parent: Arc<FiniteGroup>) -> Self {
        let all: Vec<usize> = (0..parent.order()).collect();
        Subgroup::new(parent, all).expect("whole group is a subgroup")
    }

    pub fn trivial(parent: Arc<FiniteGroup>) -> Self {
        let e = parent.identity();
        Subgroup::new(parent, vec![e]).expect("trivial subgroup")
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    /// Element indices in the parent, sorted ascending.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_in_parent(&self) -> usize {
        self.parent.order() / self.order()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.position.contains_key(&x)
    }

    /// The subgroup as an abstract group; element `i` corresponds to
    /// `self.elements()[i]`.
    pub fn as_group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// Position of a parent element inside the subgroup, if any.
    pub fn position_of(&self, parent_elt: usize) -> Option<usize> {
        self.position.get(&parent_elt).copied()
    }

    /// Embedding homomorphism from the abstract copy into the parent.
    pub fn embedding(&self) -> GroupHom {
        GroupHom::new(
            self.group.clone(),
            self.parent.clone(),
            self.elements.clone(),
        )
        .expect("subgroup embedding is a homomorphism")
    }

    pub fn is_normal(&self) -> bool {
        for g in self.parent.elements() {
            for &h in &self.elements {
                if !self.contains(self.parent.conj(g, h)) {
                    return false;
                }
            }
        }
        true
    }
}

/// A homomorphism between two table groups, recorded as the image of every
/// source element.
#[derive(Debug, Clone)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    image: Vec<usize>,
}

impl GroupHom {
    pub fn new(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        image: Vec<usize>,
    ) -> Result<Self> {
        if image.len() != source.order() {
            return Err(Error::Invalid("image length mismatch".into()));
        }
        if image.iter().any(|&y| y >= target.order()) {
            return Err(Error::Invalid("image element out of range".into()));
        }
        for x in source.elements() {
            for y in source.elements() {
                if image[source.mul(x, y)] != target.mul(image[x], image[y]) {
                    return Err(Error::Invalid(format!("not a homomorphism at ({x},{y})")));
                }
            }
        }
        Ok(GroupHom {
            source,
            target,
            image,
        })
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn kernel(&self) -> Result<Subgroup> {
        let e = self.target.identity();
        let elts: Vec<usize> = self
            .source
            .elements()
            .filter(|&x| self.image[x] == e)
            .collect();
        Subgroup::new(self.source.clone(), elts)
    }
}

/// A system of left coset representatives with the identity first.
#[derive(Debug, Clone)]
pub struct Transversal {
    subgroup: Subgroup,
    reps: Vec<usize>,
    /// coset rep index for every group element
    coset_of: Vec<usize>,
}

impl Transversal {
    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Index of the coset `gH`.
    pub fn coset_of(&self, g: usize) -> usize {
        self.coset_of[g]
    }

    /// Unique factorization `g = r s` with `r` a representative and
    /// `s` in the subgroup. Returns `(rep index, s)`.
    pub fn factor(&self, g: usize) -> (usize, usize) {
        let parent = self.subgroup.parent();
        let i = self.coset_of[g];
        let s = parent.mul(parent.inv(self.reps[i]), g);
        debug_assert!(self.subgroup.contains(s));
        (i, s)
    }
}

/// Left transversal of `h` in its parent: identity first, then the minimal
/// element of every remaining coset in increasing order.
pub fn left_transversal(h: &Subgroup) -> Transversal {
    let parent = h.parent().clone();
    let n = parent.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::with_capacity(h.index_in_parent());

    let mark = |r: usize, reps: &mut Vec<usize>, coset_of: &mut Vec<usize>| {
        let idx = reps.len();
        reps.push(r);
        for &s in h.elements() {
            coset_of[parent.mul(r, s)] = idx;
        }
    };
    mark(parent.identity(), &mut reps, &mut coset_of);
    for g in 0..n {
        if coset_of[g] == usize::MAX {
            mark(g, &mut reps, &mut coset_of);
        }
    }
    Transversal {
        subgroup: h.clone(),
        reps,
        coset_of,
    }
}

/// Quotient `g / n` for a normal subgroup, with the canonical projection.
/// Quotient elements are labelled by the minimal element of each coset.
pub fn quotient_group(g: &Arc<FiniteGroup>, n: &Subgroup) -> Result<(Arc<FiniteGroup>, GroupHom)> {
    if !same_group(g, n.parent()) {
        return Err(Error::GroupMismatch);
    }
    if !n.is_normal() {
        return Err(Error::NotNormal);
    }
    let order = g.order();
    let mut coset_min = vec![usize::MAX; order];
    for x in 0..order {
        if coset_min[x] != usize::MAX {
            continue;
        }
        // minimal element of xN is x itself when scanning ascending
        for &s in n.elements() {
            coset_min[g.mul(x, s)] = x;
        }
    }
    let mut mins: Vec<usize> = coset_min.clone();
    mins.sort_unstable();
    mins.dedup();
    let pos: HashMap<usize, usize> = mins.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let k = mins.len();
    let mut cayley = vec![0usize; k * k];
    for i in 0..k {
        for j in 0..k {
            cayley[i * k + j] = pos[&coset_min[g.mul(mins[i], mins[j])]];
        }
    }
    let quot = FiniteGroup::from_flat(format!("{}/{}", g.label(), n.order()), k, cayley)?;
    let image: Vec<usize> = (0..order).map(|x| pos[&coset_min[x]]).collect();
    let proj = GroupHom::new(g.clone(), quot.clone(), image)?;
    Ok((quot, proj))
}

/// Result of a semidirect product construction, with the embedded copies of
/// both factors.
#[derive(Debug, Clone)]
pub struct SemidirectProduct {
    pub group: Arc<FiniteGroup>,
    pub normal_factor: Subgroup,
    pub complement: Subgroup,
}

/// Semidirect product `A ⋊ Q`. `action[s]` is the automorphism of `a`
/// applied by the element `s` of `q`, given as a full element map.
/// Pairs `(x, s)` are encoded as `x * |Q| + s` and multiply by
/// `(x, s)(y, t) = (x · action[s](y), s t)`.
pub fn semidirect_product(
    a: &Arc<FiniteGroup>,
    q: &Arc<FiniteGroup>,
    action: &[Vec<usize>],
    label: impl Into<String>,
) -> Result<SemidirectProduct> {
    let na = a.order();
    let nq = q.order();
    if action.len() != nq {
        return Err(Error::InvalidAction(
            "one automorphism per Q-element required".into(),
        ));
    }
    for (s, phi) in action.iter().enumerate() {
        if phi.len() != na {
            return Err(Error::InvalidAction(format!(
                "map for {s} has wrong length"
            )));
        }
        let mut seen = vec![false; na];
        for &v in phi {
            if v >= na || seen[v] {
                return Err(Error::InvalidAction(format!(
                    "map for {s} is not a bijection"
                )));
            }
            seen[v] = true;
        }
        for x in 0..na {
            for y in 0..na {
                if phi[a.mul(x, y)] != a.mul(phi[x], phi[y]) {
                    return Err(Error::InvalidAction(format!(
                        "map for {s} is not an automorphism"
                    )));
                }
            }
        }
    }
    if action[q.identity()]
        .iter()
        .enumerate()
        .any(|(x, &v)| v != x)
    {
        return Err(Error::InvalidAction("identity must act trivially".into()));
    }
    for s in 0..nq {
        for t in 0..nq {
            let st = q.mul(s, t);
            for x in 0..na {
                if action[st][x] != action[s][action[t][x]] {
                    return Err(Error::InvalidAction(format!(
                        "action is not a homomorphism at ({s},{t})"
                    )));
                }
            }
        }
    }
    let n = na * nq;
    let enc = |x: usize, s: usize| x * nq + s;
    let mut cayley = vec![0usize; n * n];
    for x in 0..na {
        for s in 0..nq {
            for y in 0..na {
                for t in 0..nq {
                    cayley[enc(x, s) * n + enc(y, t)] = enc(a.mul(x, action[s][y]), q.mul(s, t));
                }
            }
        }
    }
    let group = FiniteGroup::from_flat(label, n, cayley)?;
    let normal_factor = Subgroup::new(
        group.clone(),
        (0..na).map(|x| enc(x, q.identity())).collect(),
    )?;
    let complement = Subgroup::new(
        group.clone(),
        (0..nq).map(|s| enc(a.identity(), s)).collect(),
    )?;
    Ok(SemidirectProduct {
        group,
        normal_factor,
        complement,
    })
}

/// Direct product `A × B` (semidirect with trivial action).
pub fn direct_product(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> SemidirectProduct {
    let trivial: Vec<Vec<usize>> = (0..b.order()).map(|_| (0..a.order()).collect()).collect();
    semidirect_product(a, b, &trivial, format!("{}x{}", a.label(), b.label()))
        .expect("trivial action is always valid")
}

pub fn centralizer(g: &Arc<FiniteGroup>, x: usize) -> Subgroup {
    let elts: Vec<usize> = g
        .elements()
        .filter(|&h| g.mul(h, x) == g.mul(x, h))
        .collect();
    Subgroup::new(g.clone(), elts).expect("centralizer is a subgroup")
}

pub fn center(g: &Arc<FiniteGroup>) -> Subgroup {
    let elts: Vec<usize> = g
        .elements()
        .filter(|&z| g.elements().all(|h| g.mul(z, h) == g.mul(h, z)))
        .collect();
    Subgroup::new(g.clone(), elts).expect("center is a subgroup")
}

pub fn normalizer(g: &Arc<FiniteGroup>, h: &Subgroup) -> Subgroup {
    let elts: Vec<usize> = g
        .elements()
        .filter(|&x| h.elements().iter().all(|&s| h.contains(g.conj(x, s))))
        .collect();
    Subgroup::new(g.clone(), elts).expect("normalizer is a subgroup")
}

/// Complete subgroup lattice, by iterated joins of cyclic subgroups.
/// Intended for small groups (the catalog); cost grows quickly with order.
pub fn all_subgroups(g: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    let mut sets: Vec<Vec<usize>> = Vec::new();
    let push = |set: Vec<usize>, sets: &mut Vec<Vec<usize>>| -> bool {
        if sets.contains(&set) {
            false
        } else {
            sets.push(set);
            true
        }
    };
    let cyclics: Vec<Vec<usize>> = {
        let mut cs = Vec::new();
        for x in g.elements() {
            let s = Subgroup::generated(g.clone(), &[x]).expect("cyclic subgroup");
            let set = s.elements().to_vec();
            if !cs.contains(&set) {
                cs.push(set);
            }
        }
        cs
    };
    for c in &cyclics {
        push(c.clone(), &mut sets);
    }
    let mut frontier: Vec<Vec<usize>> = sets.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            for c in &cyclics {
                if c.iter().all(|x| s.contains(x)) {
                    continue;
                }
                let mut gens = s.clone();
                gens.extend_from_slice(c);
                let j = Subgroup::generated(g.clone(), &gens).expect("join subgroup");
                let set = j.elements().to_vec();
                if push(set.clone(), &mut sets) {
                    next.push(set);
                }
            }
        }
        frontier = next;
    }
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    sets.into_iter()
        .map(|set| Subgroup::new(g.clone(), set).expect("lattice member"))
        .collect()
}
