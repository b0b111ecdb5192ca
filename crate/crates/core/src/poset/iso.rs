//! Rank-preserving isomorphism of graded posets.
//!
//! Two graded posets with minimum are isomorphic iff their Hasse diagrams are
//! isomorphic as directed graphs. Each diagram is first reduced by merging
//! twins (vertices with identical lower and upper covers, which any
//! automorphism may permute freely). The search then works on the disjoint
//! union of the two reduced diagrams: cells start as (rank, twin count)
//! classes and are split by the number of lower and upper neighbours in each
//! other cell until the partition is equitable. A cell with unequal numbers
//! of vertices from the two sides rules out an isomorphism. Otherwise a vertex
//! of a non-trivial cell is paired with each candidate on the other side in
//! turn and refinement continues. Every complete pairing is checked edge by
//! edge before it is returned.

use std::collections::HashMap;

use super::{Csr, ElementId, GradedPoset};

/// Hasse diagram of a poset (or of a convex piece of one), with local ids.
#[derive(Debug, Clone)]
pub(crate) struct CoverGraph {
    ranks: Vec<u32>,
    lower: Csr,
    upper: Csr,
}

impl CoverGraph {
    pub(crate) fn of(p: &GradedPoset) -> Self {
        let n = p.len();
        let mut lower = Csr::with_rows(n);
        let mut upper = Csr::with_rows(n);
        for v in 0..n as ElementId {
            lower.push_row(p.lower_covers(v));
            upper.push_row(p.upper_covers(v));
        }
        CoverGraph { ranks: p.ranks().to_vec(), lower, upper }
    }

    /// The principal filter of `e`, re-ranked from 0.
    pub(crate) fn filter(p: &GradedPoset, e: ElementId) -> Self {
        let above = p.upper_set(e);
        let local = |x: ElementId| -> Option<ElementId> {
            if x == e {
                Some(0)
            } else {
                above.binary_search(&x).ok().map(|i| i as ElementId + 1)
            }
        };
        let n = above.len() + 1;
        let shift = p.rank(e);
        let mut ranks = Vec::with_capacity(n);
        let mut lower = Csr::with_rows(n);
        let mut upper = Csr::with_rows(n);
        let mut buf = Vec::new();
        for v in std::iter::once(e).chain(above.iter().copied()) {
            ranks.push(p.rank(v) - shift);
            buf.clear();
            buf.extend(p.lower_covers(v).iter().filter_map(|&c| local(c)));
            lower.push_row(&buf);
            buf.clear();
            buf.extend(p.upper_covers(v).iter().map(|&c| local(c).expect("filters are up-closed")));
            upper.push_row(&buf);
        }
        CoverGraph { ranks, lower, upper }
    }

    /// Ranks `<= n` of `p`.
    pub(crate) fn truncation(p: &GradedPoset, n: u32) -> Self {
        let count = p.count_up_to_rank(n);
        let end = count as ElementId;
        let mut lower = Csr::with_rows(count);
        let mut upper = Csr::with_rows(count);
        for v in 0..end {
            lower.push_row(p.lower_covers(v));
            let up = p.upper_covers(v);
            upper.push_row(&up[..up.partition_point(|&q| q < end)]);
        }
        CoverGraph { ranks: p.ranks()[..count].to_vec(), lower, upper }
    }

    pub(crate) fn len(&self) -> usize {
        self.ranks.len()
    }

    pub(crate) fn rank_sizes(&self) -> Vec<usize> {
        let top = self.ranks.last().copied().unwrap_or(0) as usize;
        let mut sizes = vec![0; top + 1];
        for &r in &self.ranks {
            sizes[r as usize] += 1;
        }
        sizes
    }

    /// The sub-diagram on ranks `<= n`.
    pub(crate) fn truncated(&self, n: u32) -> Self {
        let end = self.ranks.partition_point(|&r| r <= n);
        let mut lower = Csr::with_rows(end);
        let mut upper = Csr::with_rows(end);
        for v in 0..end {
            lower.push_row(self.lower.row(v));
            let up = self.upper.row(v);
            upper.push_row(&up[..up.partition_point(|&q| (q as usize) < end)]);
        }
        CoverGraph { ranks: self.ranks[..end].to_vec(), lower, upper }
    }
}
struct Union<'a> {
    a: &'a CoverGraph,
    b: &'a CoverGraph,
    lower: Csr,
    upper: Csr,
}

impl<'a> Union<'a> {
    fn new(a: &'a CoverGraph, b: &'a CoverGraph) -> Self {
        let na = a.len() as ElementId;
        let n = a.len() + b.len();
        let mut lower = Csr::with_rows(n);
        let mut upper = Csr::with_rows(n);
        let mut buf = Vec::new();
        for v in 0..a.len() {
            lower.push_row(a.lower.row(v));
            upper.push_row(a.upper.row(v));
        }
        for v in 0..b.len() {
            buf.clear();
            buf.extend(b.lower.row(v).iter().map(|&u| u + na));
            lower.push_row(&buf);
            buf.clear();
            buf.extend(b.upper.row(v).iter().map(|&u| u + na));
            upper.push_row(&buf);
        }
        Union { a, b, lower, upper }
    }

    fn len(&self) -> usize {
        self.lower.rows()
    }
}

/// Ordered partition of the union's vertices. Cell `c` is
/// `elems[start[c]..start[c] + len[c]]`.
struct Partition {
    elems: Vec<u32>,
    pos: Vec<u32>,
    cell_of: Vec<u32>,
    start: Vec<u32>,
    len: Vec<u32>,
    /// members from the first graph
    a_len: Vec<u32>,
    /// the cell each cell was split from (itself for initial cells)
    parent: Vec<u32>,
}

/// Scratch space reused across refinements.
struct Scratch {
    count: Vec<u32>,
    touched: Vec<u32>,
    touched_cells: Vec<u32>,
    /// touched members per cell during one split pass
    marked: Vec<u32>,
    queued: Vec<bool>,
    queue: std::collections::VecDeque<u32>,
    /// offsets of the fragments of the cell being split
    fragments: Vec<u32>,
}

impl Partition {
    /// Cells are the classes of `key`, in increasing key order.
    fn new(keys: &[(u32, usize)], na: usize) -> Self {
        let n = keys.len();
        let mut elems: Vec<u32> = (0..n as u32).collect();
        elems.sort_by_key(|&v| (keys[v as usize], v));
        let mut p = Partition {
            pos: vec![0; n],
            cell_of: vec![0; n],
            elems,
            start: Vec::new(),
            len: Vec::new(),
            a_len: Vec::new(),
            parent: Vec::new(),
        };
        for i in 0..n {
            let v = p.elems[i] as usize;
            if i == 0 || keys[v] != keys[p.elems[i - 1] as usize] {
                p.start.push(i as u32);
                p.len.push(0);
                p.a_len.push(0);
                p.parent.push(p.parent.len() as u32);
            }
            let c = p.start.len() - 1;
            p.len[c] += 1;
            p.a_len[c] += u32::from(v < na);
            p.pos[v] = i as u32;
            p.cell_of[v] = c as u32;
        }
        p
    }

    fn cells(&self) -> usize {
        self.start.len()
    }

    fn balanced(&self, c: usize) -> bool {
        2 * self.a_len[c] == self.len[c]
    }

    fn members(&self, c: usize) -> &[u32] {
        let s = self.start[c] as usize;
        &self.elems[s..s + self.len[c] as usize]
    }

    /// Splits cell `c` at offset `at`: the tail becomes a new cell.
    fn split(&mut self, c: usize, at: u32, na: usize) -> usize {
        let new = self.cells();
        let s = self.start[c];
        self.start.push(s + at);
        self.len.push(self.len[c] - at);
        self.len[c] = at;
        let mut a = 0;
        for i in (s + at) as usize..(s + self.len[c] + self.len[new]) as usize {
            let v = self.elems[i] as usize;
            self.cell_of[v] = new as u32;
            a += u32::from(v < na);
        }
        self.a_len.push(a);
        self.a_len[c] -= a;
        self.parent.push(c as u32);
        new
    }

    /// Merges cells back into their parents, newest first, until only
    /// `cells` remain. A cell created by [`Partition::split`] sits right
    /// after its parent once everything newer is undone.
    fn undo_to(&mut self, cells: usize) {
        while self.cells() > cells {
            let c = self.cells() - 1;
            let p = self.parent[c] as usize;
            for i in self.start[c]..self.start[c] + self.len[c] {
                self.cell_of[self.elems[i as usize] as usize] = p as u32;
            }
            self.len[p] += self.len[c];
            self.a_len[p] += self.a_len[c];
            self.start.pop();
            self.len.pop();
            self.a_len.pop();
            self.parent.pop();
        }
    }

    fn swap_to(&mut self, v: u32, i: u32) {
        let j = self.pos[v as usize];
        let u = self.elems[i as usize];
        self.elems.swap(i as usize, j as usize);
        self.pos[u as usize] = j;
        self.pos[v as usize] = i;
    }

    /// Makes `{v, w}` a cell of its own (they must share a cell).
    fn individualize(&mut self, v: u32, w: u32, na: usize, scratch: &mut Scratch) -> usize {
        let c = self.cell_of[v as usize] as usize;
        debug_assert_eq!(c, self.cell_of[w as usize] as usize);
        let s = self.start[c];
        let end = s + self.len[c];
        self.swap_to(v, end - 1);
        self.swap_to(w, end - 2);
        let new = self.split(c, self.len[c] - 2, na);
        for cell in [c, new] {
            scratch.enqueue(cell as u32);
        }
        new
    }

    /// Refines to the coarsest equitable partition below the current one.
    /// Returns `false` as soon as some cell is unbalanced between the sides.
    fn refine(&mut self, g: &Union, na: usize, scratch: &mut Scratch) -> bool {
        while let Some(splitter) = scratch.queue.pop_front() {
            scratch.queued[splitter as usize] = false;
            for rows in [&g.upper, &g.lower] {
                // count, for every vertex, its neighbours in the splitter
                for i in 0..self.len[splitter as usize] {
                    let u = self.elems[(self.start[splitter as usize] + i) as usize];
                    for &x in rows.row(u as usize) {
                        if scratch.count[x as usize] == 0 {
                            scratch.touched.push(x);
                        }
                        scratch.count[x as usize] += 1;
                    }
                }
                if !self.split_touched(na, scratch) {
                    return false;
                }
            }
        }
        true
    }

    fn split_touched(&mut self, na: usize, scratch: &mut Scratch) -> bool {
        if scratch.marked.len() < self.cells() {
            scratch.marked.resize(self.cells(), 0);
        }
        // move touched vertices to the back of their cells
        scratch.touched_cells.clear();
        for ti in 0..scratch.touched.len() {
            let x = scratch.touched[ti];
            let c = self.cell_of[x as usize] as usize;
            if scratch.marked[c] == 0 {
                scratch.touched_cells.push(c as u32);
            }
            scratch.marked[c] += 1;
            self.swap_to(x, self.start[c] + self.len[c] - scratch.marked[c]);
        }
        scratch.touched_cells.sort_unstable();
        let mut ok = true;
        for ci in 0..scratch.touched_cells.len() {
            let c = scratch.touched_cells[ci] as usize;
            let marked = std::mem::take(&mut scratch.marked[c]) as usize;
            if !ok {
                continue;
            }
            let (s, len) = (self.start[c] as usize, self.len[c] as usize);
            let count = &scratch.count;
            let tail = &mut self.elems[s + len - marked..s + len];
            tail.sort_unstable_by_key(|&v| count[v as usize]);
            for i in s + len - marked..s + len {
                self.pos[self.elems[i] as usize] = i as u32;
            }
            // untouched members (count 0) first, then by count
            scratch.fragments.clear();
            let mut i = 0;
            if marked < len {
                scratch.fragments.push(0);
                i = len - marked;
            }
            while i < len {
                scratch.fragments.push(i as u32);
                let k = count[self.elems[s + i] as usize];
                i += 1;
                while i < len && count[self.elems[s + i] as usize] == k {
                    i += 1;
                }
            }
            if scratch.fragments.len() == 1 {
                continue;
            }
            // peel fragments off the end so earlier offsets stay valid
            scratch.enqueue(c as u32);
            for f in (1..scratch.fragments.len()).rev() {
                let cell = self.split(c, scratch.fragments[f], na);
                ok &= self.balanced(cell);
                scratch.enqueue(cell as u32);
            }
            ok &= self.balanced(c);
        }
        for &x in &scratch.touched {
            scratch.count[x as usize] = 0;
        }
        scratch.touched.clear();
        ok
    }
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            count: vec![0; n],
            touched: Vec::new(),
            touched_cells: Vec::new(),
            marked: Vec::new(),
            queued: Vec::new(),
            queue: Default::default(),
            fragments: Vec::new(),
        }
    }

    fn enqueue(&mut self, c: u32) {
        if self.queued.len() <= c as usize {
            self.queued.resize(c as usize + 1, false);
        }
        if !self.queued[c as usize] {
            self.queued[c as usize] = true;
            self.queue.push_back(c);
        }
    }

    fn reset_queue(&mut self) {
        for c in self.queue.drain(..) {
            self.queued[c as usize] = false;
        }
    }
}

/// Whether `map` (a bijection by construction) preserves ranks and covers.
fn preserves_covers(a: &CoverGraph, b: &CoverGraph, map: &[ElementId]) -> bool {
    (0..a.len()).all(|v| {
        let w = map[v] as usize;
        let (la, lb) = (a.lower.row(v), b.lower.row(w));
        a.ranks[v] == b.ranks[w]
            && la.len() == lb.len()
            && la.iter().all(|&u| lb.binary_search(&map[u as usize]).is_ok())
    })
}

/// Vertices with the same lower and upper covers can be swapped freely.
/// Collapses each such class to one vertex.
struct Twins {
    quotient: CoverGraph,
    members: Vec<Vec<ElementId>>,
}

impl Twins {
    fn of(g: &CoverGraph) -> Self {
        let mut class_of = vec![0u32; g.len()];
        let mut members: Vec<Vec<ElementId>> = Vec::new();
        let mut seen: HashMap<(&[ElementId], &[ElementId]), u32> = HashMap::new();
        for (v, slot) in class_of.iter_mut().enumerate() {
            let c = *seen.entry((g.lower.row(v), g.upper.row(v))).or_insert_with(|| {
                members.push(Vec::new());
                members.len() as u32 - 1
            });
            *slot = c;
            members[c as usize].push(v as ElementId);
        }
        let mut lower = Csr::with_rows(members.len());
        let mut upper = Csr::with_rows(members.len());
        let mut buf = Vec::new();
        for m in &members {
            for (rows, out) in [(&g.lower, &mut lower), (&g.upper, &mut upper)] {
                buf.clear();
                buf.extend(rows.row(m[0] as usize).iter().map(|&u| class_of[u as usize]));
                buf.sort_unstable();
                buf.dedup();
                out.push_row(&buf);
            }
        }
        let ranks = members.iter().map(|m| g.ranks[m[0] as usize]).collect();
        Twins { quotient: CoverGraph { ranks, lower, upper }, members }
    }
}

/// One branching point: `v` is paired with each candidate in turn.
struct Level {
    v: u32,
    candidates: Vec<u32>,
    next: usize,
    /// cell count before pairing, for undoing
    cells: usize,
}

/// Depth-first search over pairings, undoing splits on backtrack.
fn search(g: &Union, mut cur: Partition, scratch: &mut Scratch) -> Option<Vec<ElementId>> {
    let na = g.a.len();
    let rank = |v: u32| {
        if (v as usize) < na {
            g.a.ranks[v as usize]
        } else {
            g.b.ranks[v as usize - na]
        }
    };
    let mut stack: Vec<Level> = Vec::new();
    loop {
        // `cur` is equitable and balanced here
        let target =
            (0..cur.cells()).filter(|&c| cur.a_len[c] > 1).min_by_key(|&c| (cur.len[c], rank(cur.members(c)[0]), c));
        match target {
            None => {
                let mut partner = vec![0u32; cur.cells()];
                for w in na..g.len() {
                    partner[cur.cell_of[w] as usize] = (w - na) as u32;
                }
                let map: Vec<ElementId> = (0..na).map(|v| partner[cur.cell_of[v] as usize]).collect();
                if preserves_covers(g.a, g.b, &map) {
                    return Some(map);
                }
            }
            Some(c) => {
                let members = cur.members(c);
                let v = members.iter().copied().filter(|&x| (x as usize) < na).min().expect("balanced cell");
                let mut candidates: Vec<u32> = members.iter().copied().filter(|&x| (x as usize) >= na).collect();
                candidates.sort_unstable();
                stack.push(Level { v, candidates, next: 0, cells: cur.cells() });
            }
        }
        // pair the deepest open level with its next candidate
        loop {
            let top = stack.last_mut()?;
            cur.undo_to(top.cells);
            let Some(&w) = top.candidates.get(top.next) else {
                stack.pop();
                continue;
            };
            top.next += 1;
            cur.individualize(top.v, w, na, scratch);
            if cur.refine(g, na, scratch) {
                break;
            }
            scratch.reset_queue();
        }
    }
}

pub(crate) fn find_isomorphism_graphs(a: &CoverGraph, b: &CoverGraph) -> Option<Vec<ElementId>> {
    if a.len() != b.len() || a.lower.nnz() != b.lower.nnz() || a.rank_sizes() != b.rank_sizes() {
        return None;
    }
    let (ta, tb) = (Twins::of(a), Twins::of(b));
    if ta.members.len() != tb.members.len() {
        return None;
    }
    let g = Union::new(&ta.quotient, &tb.quotient);
    let na = ta.quotient.len();
    let keys: Vec<(u32, usize)> = ta
        .quotient
        .ranks
        .iter()
        .zip(&ta.members)
        .chain(tb.quotient.ranks.iter().zip(&tb.members))
        .map(|(&r, m)| (r, m.len()))
        .collect();
    let mut root = Partition::new(&keys, na);
    if !(0..root.cells()).all(|c| root.balanced(c)) {
        return None;
    }
    let mut scratch = Scratch::new(g.len());
    for c in 0..root.cells() {
        scratch.enqueue(c as u32);
    }
    if !root.refine(&g, na, &mut scratch) {
        return None;
    }
    let classes = search(&g, root, &mut scratch)?;
    let mut map = vec![0; a.len()];
    for (c, d) in classes.iter().enumerate() {
        for (&v, &w) in ta.members[c].iter().zip(&tb.members[*d as usize]) {
            map[v as usize] = w;
        }
    }
    preserves_covers(a, b, &map).then_some(map)
}

/// A rank-preserving order isomorphism `a -> b`, as `map[id in a] = id in b`.
pub fn find_isomorphism(a: &GradedPoset, b: &GradedPoset) -> Option<Vec<ElementId>> {
    if a.len() != b.len() || a.rank_sizes() != b.rank_sizes() {
        return None;
    }
    find_isomorphism_graphs(&CoverGraph::of(a), &CoverGraph::of(b))
}

pub fn is_isomorphic(a: &GradedPoset, b: &GradedPoset) -> bool {
    find_isomorphism(a, b).is_some()
}
