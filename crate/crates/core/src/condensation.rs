//! Strong components and their acyclic ordering.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::digraph::Digraph;
use crate::multipartite::MultipartiteTournament;

/// Strong components of a digraph listed in an acyclic order: every arc
/// between two components goes from an earlier one to a later one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CondensationDag {
    components: Vec<Vec<usize>>,
    component_of: Vec<usize>,
    terminal_index: usize,
}

impl CondensationDag {
    /// Components in acyclic order, each sorted ascending.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.component_of[v]
    }

    /// Index of the last component, which has no outgoing arcs.
    pub fn terminal_index(&self) -> usize {
        self.terminal_index
    }

    pub fn terminal(&self) -> &[usize] {
        &self.components[self.terminal_index]
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

/// Tarjan's algorithm, iterative. Components come out in reverse
/// topological order.
fn tarjan(d: &Digraph) -> Vec<Vec<usize>> {
    const UNSEEN: usize = usize::MAX;
    let n = d.vertex_count();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut next = 0;
    // (vertex, position in its out-neighbor list)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(top) = call.last_mut() {
            let v = top.0;
            let outs = d.out_neighbors(v);
            if top.1 < outs.len() {
                let w = outs[top.1];
                top.1 += 1;
                if index[w] == UNSEEN {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                comps.push(comp);
            }
        }
    }
    comps
}

/// Strong components in acyclic order. Among components that are ready at
/// the same time, the one with the smallest vertex label goes first.
pub fn condensation(d: &Digraph) -> CondensationDag {
    let comps = tarjan(d);
    let n = d.vertex_count();
    let c = comps.len();
    let mut comp_of = vec![0; n];
    for (i, comp) in comps.iter().enumerate() {
        for &v in comp {
            comp_of[v] = i;
        }
    }
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); c];
    let mut indeg = vec![0usize; c];
    for (u, v) in d.arcs() {
        let (a, b) = (comp_of[u], comp_of[v]);
        if a != b {
            succ[a].push(b);
        }
    }
    for list in &mut succ {
        list.sort_unstable();
        list.dedup();
        for &b in list.iter() {
            indeg[b] += 1;
        }
    }
    let mut ready: BinaryHeap<Reverse<(usize, usize)>> = (0..c)
        .filter(|&i| indeg[i] == 0)
        .map(|i| Reverse((comps[i][0], i)))
        .collect();
    let mut order = Vec::with_capacity(c);
    while let Some(Reverse((_, i))) = ready.pop() {
        order.push(i);
        for &b in &succ[i] {
            indeg[b] -= 1;
            if indeg[b] == 0 {
                ready.push(Reverse((comps[b][0], b)));
            }
        }
    }
    let mut rank = vec![0; c];
    for (pos, &i) in order.iter().enumerate() {
        rank[i] = pos;
    }
    let components: Vec<Vec<usize>> = order.iter().map(|&i| comps[i].clone()).collect();
    let component_of = comp_of.iter().map(|&i| rank[i]).collect();
    CondensationDag {
        terminal_index: components.len().saturating_sub(1),
        components,
        component_of,
    }
}

/// Vertex set of the terminal strong component.
///
/// When the tournament has no sink vertex this component is unique: any
/// other component without out-arcs would have to share a part with every
/// vertex of it. With sinks present, several singleton components can be
/// terminal and the last one in the ordering is returned.
pub fn terminal_component(d: &MultipartiteTournament) -> Vec<usize> {
    condensation(d.digraph()).terminal().to_vec()
}
