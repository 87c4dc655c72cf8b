//! Consecutive-ones and circular-ones testing on binary matrices, and Helly
//! circular-arc recognition through the clique matrix.
//!
//! The consecutive-ones engine builds a PQ-tree from the overlap components of
//! the row family. Rows that overlap (intersect without containment) are
//! chained into components; each component with two or more rows pins down
//! an order of its membership classes up to reversal, which becomes a Q-node.
//! Components nest inside single classes of one another, so the recursion
//! descends into each class with the rows contained in it.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::cliques::enumerate_maximal_cliques;
use crate::graph::{Clique, Graph};

/// A dense 0/1 matrix; rows are stored as bitsets over the columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryMatrix {
    cols: usize,
    rows: Vec<FixedBitSet>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BinaryMatrix {
            cols,
            rows: vec![FixedBitSet::with_capacity(cols); rows],
        }
    }

    pub fn from_rows(cols: usize, rows: &[Vec<bool>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "row {r} has wrong length");
            for (c, &bit) in row.iter().enumerate() {
                m.set(r, c, bit);
            }
        }
        m
    }

    /// Vertex-versus-clique incidence: row `v`, column `k` is set iff vertex
    /// `v` belongs to `cliques[k]`.
    pub fn clique_matrix(n: usize, cliques: &[Clique]) -> Self {
        let mut m = Self::zeros(n, cliques.len());
        for (k, q) in cliques.iter().enumerate() {
            for v in q.iter() {
                m.set(v, k, true);
            }
        }
        m
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].contains(c)
    }

    pub fn set(&mut self, r: usize, c: usize, bit: bool) {
        self.rows[r].set(c, bit);
    }

    pub fn row(&self, r: usize) -> &FixedBitSet {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[FixedBitSet] {
        &self.rows
    }

    pub fn column_weight(&self, c: usize) -> usize {
        self.rows.iter().filter(|r| r.contains(c)).count()
    }

    /// Copy with every row containing a one in `anchor` complemented.
    pub fn complement_rows_through(&self, anchor: usize) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                if row.contains(anchor) {
                    let mut flipped = row.clone();
                    flipped.toggle_range(..);
                    flipped
                } else {
                    row.clone()
                }
            })
            .collect();
        BinaryMatrix {
            cols: self.cols,
            rows,
        }
    }
}

/// True when every row's ones are contiguous under the column order `order`.
pub fn is_consecutive_under(m: &BinaryMatrix, order: &[usize]) -> bool {
    let mut pos = vec![usize::MAX; m.col_count()];
    for (i, &c) in order.iter().enumerate() {
        pos[c] = i;
    }
    if order.len() != m.col_count() || pos.contains(&usize::MAX) {
        return false;
    }
    m.rows().iter().all(|row| {
        let ps: Vec<usize> = row.ones().map(|c| pos[c]).collect();
        match (ps.iter().min(), ps.iter().max()) {
            (Some(lo), Some(hi)) => hi - lo + 1 == ps.len(),
            _ => true,
        }
    })
}

/// True when every row's ones are contiguous around the cycle `order`.
pub fn is_circular_under(m: &BinaryMatrix, order: &[usize]) -> bool {
    let k = order.len();
    if k != m.col_count() {
        return false;
    }
    m.rows().iter().all(|row| {
        let ones = row.count_ones(..);
        if ones == 0 || ones == k {
            return true;
        }
        // count 0->1 transitions around the cycle
        let starts = (0..k)
            .filter(|&i| row.contains(order[i]) && !row.contains(order[(i + k - 1) % k]))
            .count();
        starts == 1
    })
}

/// PQ-tree over column indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PqNode {
    Leaf(usize),
    /// Children may be permuted arbitrarily.
    P(Vec<PqNode>),
    /// Children may only be reversed.
    Q(Vec<PqNode>),
}

impl PqNode {
    pub fn frontier(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.push_frontier(&mut out);
        out
    }

    fn push_frontier(&self, out: &mut Vec<usize>) {
        match self {
            PqNode::Leaf(c) => out.push(*c),
            PqNode::P(ch) | PqNode::Q(ch) => ch.iter().for_each(|c| c.push_frontier(out)),
        }
    }

    /// Number of column orders the tree admits (saturating).
    pub fn order_count(&self) -> u128 {
        match self {
            PqNode::Leaf(_) => 1,
            PqNode::P(ch) => {
                let mut total: u128 = (1..=ch.len() as u128).fold(1, |a, b| a.saturating_mul(b));
                for c in ch {
                    total = total.saturating_mul(c.order_count());
                }
                total
            }
            PqNode::Q(ch) => {
                let mut total: u128 = if ch.len() > 1 { 2 } else { 1 };
                for c in ch {
                    total = total.saturating_mul(c.order_count());
                }
                total
            }
        }
    }
}

/// PQ-tree of all column orders with consecutive ones, or `None` if the
/// matrix lacks the property.
pub fn pq_tree(m: &BinaryMatrix) -> Option<PqNode> {
    let cols = m.col_count();
    if cols == 0 {
        return Some(PqNode::P(Vec::new()));
    }
    let elements: Vec<usize> = (0..cols).collect();
    build(&elements, m.rows().to_vec(), cols)
}

/// One column order with consecutive ones per row, if any exists.
pub fn consecutive_ones_order(m: &BinaryMatrix) -> Option<Vec<usize>> {
    pq_tree(m).map(|t| t.frontier())
}

fn is_subset(a: &FixedBitSet, b: &FixedBitSet) -> bool {
    a.is_subset(b)
}

fn overlaps(a: &FixedBitSet, b: &FixedBitSet) -> bool {
    !a.is_disjoint(b) && !a.is_subset(b) && !b.is_subset(a)
}

/// Builds the subtree over `elements` (sorted) constrained by `sets`, which
/// must all be subsets of `elements`.
fn build(elements: &[usize], sets: Vec<FixedBitSet>, width: usize) -> Option<PqNode> {
    if elements.len() == 1 {
        return Some(PqNode::Leaf(elements[0]));
    }
    let mut family: Vec<FixedBitSet> = sets
        .into_iter()
        .filter(|s| {
            let k = s.count_ones(..);
            k >= 2 && k < elements.len()
        })
        .collect();
    family.sort_by(|a, b| a.ones().cmp(b.ones()));
    family.dedup();
    if family.is_empty() {
        return Some(PqNode::P(elements.iter().map(|&e| PqNode::Leaf(e)).collect()));
    }

    let comps = overlap_components(&family);
    let unions: Vec<FixedBitSet> = comps
        .iter()
        .map(|comp| {
            let mut u = FixedBitSet::with_capacity(width);
            for &i in comp {
                u.union_with(&family[i]);
            }
            u
        })
        .collect();

    // a component is nested when its union fits inside a row of another one
    let top: Vec<usize> = (0..comps.len())
        .filter(|&a| {
            !comps.iter().enumerate().any(|(b, comp)| {
                b != a && comp.iter().any(|&i| is_subset(&unions[a], &family[i]))
            })
        })
        .collect();

    let mut children = Vec::new();
    let mut covered = FixedBitSet::with_capacity(width);
    for &a in &top {
        covered.union_with(&unions[a]);
        let members: Vec<&FixedBitSet> = comps[a].iter().map(|&i| &family[i]).collect();
        children.push(component_node(&members, &unions[a], &family, width)?);
    }
    for &e in elements {
        if !covered.contains(e) {
            children.push(PqNode::Leaf(e));
        }
    }
    if children.len() == 1 {
        children.pop()
    } else {
        Some(PqNode::P(children))
    }
}

fn component_node(
    members: &[&FixedBitSet],
    union: &FixedBitSet,
    family: &[FixedBitSet],
    width: usize,
) -> Option<PqNode> {
    let inside = |zone: &FixedBitSet| -> Vec<FixedBitSet> {
        family
            .iter()
            .filter(|s| is_subset(s, zone))
            .cloned()
            .collect()
    };
    if members.len() == 1 {
        let elements: Vec<usize> = union.ones().collect();
        return build(&elements, inside(union), width);
    }
    let classes = order_classes(members)?;
    let children = classes
        .iter()
        .map(|class| {
            let elements: Vec<usize> = class.ones().collect();
            build(&elements, inside(class), width)
        })
        .collect::<Option<Vec<_>>>()?;
    Some(PqNode::Q(children))
}

fn overlap_components(family: &[FixedBitSet]) -> Vec<Vec<usize>> {
    let k = family.len();
    let mut comp = vec![usize::MAX; k];
    let mut out = Vec::new();
    for s in 0..k {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        comp[s] = id;
        let mut members = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(i) = queue.pop_front() {
            for j in 0..k {
                if comp[j] == usize::MAX && overlaps(&family[i], &family[j]) {
                    comp[j] = id;
                    members.push(j);
                    queue.push_back(j);
                }
            }
        }
        out.push(members);
    }
    out
}

/// Orders the membership classes of an overlap-connected family so that every
/// member is a contiguous run of classes. Members are inserted in BFS order of
/// the overlap graph, so each new member overlaps an already placed one and
/// its position is forced up to the initial reversal.
fn order_classes(members: &[&FixedBitSet]) -> Option<Vec<FixedBitSet>> {
    let k = members.len();
    let mut order = Vec::with_capacity(k);
    let mut placed = vec![false; k];
    let mut queue = VecDeque::from([0]);
    placed[0] = true;
    while let Some(i) = queue.pop_front() {
        order.push(i);
        for j in 0..k {
            if !placed[j] && overlaps(members[i], members[j]) {
                placed[j] = true;
                queue.push_back(j);
            }
        }
    }
    debug_assert_eq!(order.len(), k, "members must be overlap-connected");

    let mut classes: Vec<FixedBitSet> = vec![members[order[0]].clone()];
    let mut covered = members[order[0]].clone();
    for &idx in &order[1..] {
        let t = members[idx];
        let hits: Vec<usize> = (0..classes.len())
            .filter(|&c| !classes[c].is_disjoint(t))
            .collect();
        let (l, r) = (*hits.first()?, *hits.last()?);
        if hits.len() != r - l + 1 {
            return None;
        }
        if (l + 1..r).any(|c| !is_subset(&classes[c], t)) {
            return None;
        }
        let full = |c: &FixedBitSet| is_subset(c, t);
        let mut fresh = t.clone();
        fresh.difference_with(&covered);
        let last = classes.len() - 1;

        if fresh.is_clear() {
            if l == r {
                // a member inside one class overlaps nothing placed so far
                debug_assert!(false, "BFS order violated");
                return None;
            }
            split_right_of(&mut classes, r, t);
            split_left_of(&mut classes, l, t);
        } else {
            let can_right = r == last && (l == r || full(&classes[r]));
            let can_left = l == 0 && (l == r || full(&classes[l]));
            if can_right {
                split_left_of(&mut classes, l, t);
                classes.push(fresh.clone());
            } else if can_left {
                split_right_of(&mut classes, r, t);
                classes.insert(0, fresh.clone());
            } else {
                return None;
            }
            covered.union_with(&fresh);
        }
    }

    // every member must now be a contiguous run of whole classes
    for m in members {
        let hits: Vec<usize> = (0..classes.len())
            .filter(|&c| !classes[c].is_disjoint(m))
            .collect();
        let contiguous = hits.windows(2).all(|w| w[1] == w[0] + 1);
        if !contiguous || hits.iter().any(|&c| !is_subset(&classes[c], m)) {
            return None;
        }
    }
    Some(classes)
}

/// Splits class `c` into `(c \ t, c ∩ t)`, keeping the part in `t` on the right.
fn split_left_of(classes: &mut Vec<FixedBitSet>, c: usize, t: &FixedBitSet) {
    let mut inner = classes[c].clone();
    inner.intersect_with(t);
    let mut outer = classes[c].clone();
    outer.difference_with(t);
    if !outer.is_clear() && !inner.is_clear() {
        classes[c] = outer;
        classes.insert(c + 1, inner);
    }
}

/// Splits class `c` into `(c ∩ t, c \ t)`, keeping the part in `t` on the left.
fn split_right_of(classes: &mut Vec<FixedBitSet>, c: usize, t: &FixedBitSet) {
    let mut inner = classes[c].clone();
    inner.intersect_with(t);
    let mut outer = classes[c].clone();
    outer.difference_with(t);
    if !outer.is_clear() && !inner.is_clear() {
        classes[c] = inner;
        classes.insert(c + 1, outer);
    }
}

/// A cyclic column order with circularly consecutive ones, found with the
/// anchor column of largest weight.
pub fn circular_ones_order(m: &BinaryMatrix) -> Option<Vec<usize>> {
    let cols = m.col_count();
    if cols <= 2 {
        return Some((0..cols).collect());
    }
    let anchor = (0..cols)
        .max_by_key(|&c| (m.column_weight(c), std::cmp::Reverse(c)))
        .unwrap();
    circular_ones_order_with_anchor(m, anchor)
}

/// Tucker's reduction: complementing every row that has a one in `anchor`
/// turns circular-ones into consecutive-ones; any linear order of the
/// reduced matrix, read cyclically, works for the original.
pub fn circular_ones_order_with_anchor(m: &BinaryMatrix, anchor: usize) -> Option<Vec<usize>> {
    let cols = m.col_count();
    if cols <= 2 {
        return Some((0..cols).collect());
    }
    consecutive_ones_order(&m.complement_rows_through(anchor))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum HcaRejection {
    CapExceeded { cap: u64 },
    NoCircularOrder,
}

/// Helly circular-arc test: the maximal cliques (at most `cap` of them) must
/// admit a cyclic order in which each vertex's cliques are consecutive. On
/// success returns the cliques in such an order.
pub fn is_helly_circular_arc(g: &Graph, cap: u64) -> Result<Vec<Clique>, HcaRejection> {
    let list = enumerate_maximal_cliques(g, cap);
    if list.capped {
        return Err(HcaRejection::CapExceeded { cap });
    }
    let m = BinaryMatrix::clique_matrix(g.n(), &list.cliques);
    let order = circular_ones_order(&m).ok_or(HcaRejection::NoCircularOrder)?;
    Ok(order.into_iter().map(|k| list.cliques[k].clone()).collect())
}

#[cfg(test)]
pub(crate) mod oracle {
    //! Exhaustive column-order search used to cross-check the PQ engine.
    use super::*;

    pub fn permutations(k: usize) -> Vec<Vec<usize>> {
        fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
            if prefix.len() == used.len() {
                out.push(prefix.clone());
                return;
            }
            for i in 0..used.len() {
                if !used[i] {
                    used[i] = true;
                    prefix.push(i);
                    rec(prefix, used, out);
                    prefix.pop();
                    used[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; k], &mut out);
        out
    }

    pub fn brute_consecutive(m: &BinaryMatrix) -> Vec<Vec<usize>> {
        permutations(m.col_count())
            .into_iter()
            .filter(|p| is_consecutive_under(m, p))
            .collect()
    }

    /// Cyclic orders with column 0 first and the second column smaller than
    /// the last, one representative per rotation/reflection class.
    pub fn brute_circular(m: &BinaryMatrix) -> bool {
        let k = m.col_count();
        if k <= 2 {
            return true;
        }
        permutations(k - 1).into_iter().any(|p| {
            if p[0] > p[k - 2] {
                return false;
            }
            let order: Vec<usize> = std::iter::once(0).chain(p.iter().map(|&c| c + 1)).collect();
            is_circular_under(m, &order)
        })
    }

    pub fn enumerate_pq(node: &PqNode) -> Vec<Vec<usize>> {
        match node {
            PqNode::Leaf(c) => vec![vec![*c]],
            PqNode::Q(ch) => {
                let fwd = concat_all(ch.iter().map(enumerate_pq).collect());
                let mut out = fwd.clone();
                if ch.len() > 1 {
                    let rev: Vec<Vec<Vec<usize>>> = ch.iter().rev().map(enumerate_pq).collect();
                    out.extend(concat_all(rev));
                }
                out
            }
            PqNode::P(ch) => {
                let mut out = Vec::new();
                for perm in permutations(ch.len()) {
                    out.extend(concat_all(perm.iter().map(|&i| enumerate_pq(&ch[i])).collect()));
                }
                out
            }
        }
    }

    fn concat_all(parts: Vec<Vec<Vec<usize>>>) -> Vec<Vec<usize>> {
        let mut acc: Vec<Vec<usize>> = vec![Vec::new()];
        for options in parts {
            let mut next = Vec::new();
            for a in &acc {
                for o in &options {
                    let mut v = a.clone();
                    v.extend_from_slice(o);
                    next.push(v);
                }
            }
            acc = next;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::oracle::*;
    use super::*;
    use crate::graph::fixtures::*;
    use proptest::prelude::*;

    fn c_incidence(k: usize) -> BinaryMatrix {
        // row i touches columns i and i+1 (mod k): vertex-edge incidence of Ck
        let rows: Vec<Vec<bool>> = (0..k)
            .map(|i| (0..k).map(|c| c == i || c == (i + k - 1) % k).collect())
            .collect();
        BinaryMatrix::from_rows(k, &rows)
    }

    #[test]
    fn identity_matrix_is_consecutive() {
        let rows: Vec<Vec<bool>> = (0..4).map(|i| (0..4).map(|c| c == i).collect()).collect();
        let m = BinaryMatrix::from_rows(4, &rows);
        let order = consecutive_ones_order(&m).unwrap();
        assert!(is_consecutive_under(&m, &order));
    }

    #[test]
    fn single_gapped_row() {
        let m = BinaryMatrix::from_rows(3, &[vec![true, false, true]]);
        let order = consecutive_ones_order(&m).unwrap();
        assert!(is_consecutive_under(&m, &order));
        let p0 = order.iter().position(|&c| c == 0).unwrap();
        let p2 = order.iter().position(|&c| c == 2).unwrap();
        assert_eq!(p0.abs_diff(p2), 1);
    }

    #[test]
    fn cycle_incidence_matches_exhaustive_search() {
        // every row of the C4 incidence is a cyclic neighbor pair; the wrap
        // row makes a linear arrangement impossible
        let m = c_incidence(4);
        let brute = brute_consecutive(&m);
        assert!(brute.is_empty());
        assert_eq!(consecutive_ones_order(&m), None);
        assert!(circular_ones_order(&m).is_some());
    }

    #[test]
    fn circular_small_cases() {
        let m = BinaryMatrix::from_rows(2, &[vec![true, false], vec![false, true]]);
        assert_eq!(circular_ones_order(&m), Some(vec![0, 1]));
        let c5 = c_incidence(5);
        let order = circular_ones_order(&c5).unwrap();
        assert!(is_circular_under(&c5, &order));
    }

    #[test]
    fn helly_circular_arc_examples() {
        let order = is_helly_circular_arc(&cycle(5), 100).unwrap();
        assert_eq!(order.len(), 5);
        assert_eq!(is_helly_circular_arc(&cycle(4), 100).unwrap().len(), 4);
        assert_eq!(
            is_helly_circular_arc(&cycle(5), 3),
            Err(HcaRejection::CapExceeded { cap: 3 })
        );
    }

    #[test]
    fn three_sun_agrees_with_exhaustive_cyclic_search() {
        // triangle 0,1,2 with 3~{0,1}, 4~{1,2}, 5~{2,0}
        let g = Graph::from_edge_list(
            6,
            &[(0, 1), (1, 2), (2, 0), (3, 0), (3, 1), (4, 1), (4, 2), (5, 2), (5, 0)],
        )
        .unwrap();
        let cliques = enumerate_maximal_cliques(&g, 100).cliques;
        let m = BinaryMatrix::clique_matrix(6, &cliques);
        assert_eq!(is_helly_circular_arc(&g, 100).is_ok(), brute_circular(&m));
    }

    #[test]
    fn pq_tree_lists_exactly_the_valid_orders() {
        let m = BinaryMatrix::from_rows(
            5,
            &[
                vec![true, true, false, false, false],
                vec![false, true, true, false, false],
                vec![false, false, false, true, true],
            ],
        );
        let tree = pq_tree(&m).unwrap();
        let mut listed = enumerate_pq(&tree);
        listed.sort();
        let mut brute = brute_consecutive(&m);
        brute.sort();
        assert_eq!(listed, brute);
        assert_eq!(tree.order_count(), brute.len() as u128);
    }

    fn arb_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BinaryMatrix> {
        (1..=max_cols, 0..=max_rows).prop_flat_map(|(c, r)| {
            proptest::collection::vec(proptest::collection::vec(prop::bool::weighted(0.4), c), r)
                .prop_map(move |rows| BinaryMatrix::from_rows(c, &rows))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(400))]

        #[test]
        fn consecutive_agrees_with_brute_force(m in arb_matrix(6, 6)) {
            let brute = brute_consecutive(&m);
            match pq_tree(&m) {
                Some(tree) => {
                    let order = tree.frontier();
                    prop_assert!(is_consecutive_under(&m, &order));
                    let mut listed = enumerate_pq(&tree);
                    listed.sort();
                    listed.dedup();
                    let mut b = brute.clone();
                    b.sort();
                    prop_assert_eq!(listed, b);
                }
                None => prop_assert!(brute.is_empty()),
            }
        }

        #[test]
        fn circular_agrees_with_brute_force(m in arb_matrix(7, 7)) {
            let expected = brute_circular(&m);
            match circular_ones_order(&m) {
                Some(order) => {
                    prop_assert!(expected);
                    prop_assert!(is_circular_under(&m, &order));
                }
                None => prop_assert!(!expected),
            }
        }

        #[test]
        fn circular_status_ignores_anchor(m in arb_matrix(6, 6)) {
            let base = circular_ones_order(&m).is_some();
            for anchor in 0..m.col_count() {
                prop_assert_eq!(circular_ones_order_with_anchor(&m, anchor).is_some(), base);
            }
        }

        #[test]
        fn duplicating_a_row_keeps_status(m in arb_matrix(6, 6), pick in any::<prop::sample::Index>()) {
            if m.row_count() > 0 {
                let r = pick.index(m.row_count());
                let mut rows: Vec<Vec<bool>> = (0..m.row_count())
                    .map(|i| (0..m.col_count()).map(|c| m.get(i, c)).collect())
                    .collect();
                rows.push(rows[r].clone());
                let dup = BinaryMatrix::from_rows(m.col_count(), &rows);
                prop_assert_eq!(consecutive_ones_order(&dup).is_some(), consecutive_ones_order(&m).is_some());
                prop_assert_eq!(circular_ones_order(&dup).is_some(), circular_ones_order(&m).is_some());
            }
        }
    }
}
