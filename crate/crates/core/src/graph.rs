//! Strongly connected components and bounded cycle counting on small
//! directed multigraphs given as adjacency lists.

/// Strongly connected components in topological order of the condensation
/// (a component only has edges to components listed after it).
pub fn strongly_connected_components(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut out = Vec::new();
    // explicit DFS stack of (vertex, next edge position)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if let Some(&w) = adj[v].get(*pos) {
                *pos += 1;
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
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
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                out.push(comp);
            }
        }
    }
    out.reverse();
    out
}

/// Component id of every vertex, for components as returned above.
pub fn component_map(n: usize, comps: &[Vec<usize>]) -> Vec<usize> {
    let mut of = vec![0; n];
    for (c, comp) in comps.iter().enumerate() {
        for &v in comp {
            of[v] = c;
        }
    }
    of
}

/// Number of edges with both ends inside `comp`.
pub fn internal_edges(adj: &[Vec<usize>], comp: &[usize], comp_of: &[usize]) -> usize {
    let id = comp_of[comp[0]];
    comp.iter().map(|&v| adj[v].iter().filter(|&&w| comp_of[w] == id).count()).sum()
}

/// How many distinct cycles live inside one strongly connected component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CycleMultiplicity {
    None,
    One,
    Many,
}

/// A component with `k` vertices holds exactly one cycle iff it has exactly
/// `k` internal edges; fewer means it is a single vertex without a loop.
pub fn cycle_multiplicity(adj: &[Vec<usize>], comp: &[usize], comp_of: &[usize]) -> CycleMultiplicity {
    let e = internal_edges(adj, comp, comp_of);
    match e.cmp(&comp.len()) {
        std::cmp::Ordering::Less => CycleMultiplicity::None,
        std::cmp::Ordering::Equal => CycleMultiplicity::One,
        std::cmp::Ordering::Greater => CycleMultiplicity::Many,
    }
}

/// Counts simple cycles (parallel edges give distinct cycles), stopping at
/// `cap`. Returns the count and whether the cap was hit.
pub fn count_simple_cycles(adj: &[Vec<usize>], cap: usize) -> (usize, bool) {
    let n = adj.len();
    let mut count = 0usize;
    let mut on_path = vec![false; n];
    for start in 0..n {
        // cycles whose least vertex is `start`
        let mut call: Vec<(usize, usize)> = vec![(start, 0)];
        on_path[start] = true;
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if let Some(&w) = adj[v].get(*pos) {
                *pos += 1;
                if w == start {
                    count += 1;
                    if count >= cap {
                        return (cap, true);
                    }
                } else if w > start && !on_path[w] {
                    on_path[w] = true;
                    call.push((w, 0));
                }
                continue;
            }
            on_path[v] = false;
            call.pop();
        }
    }
    (count, false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components_in_topological_order() {
        // 0 -> 1 <-> 2 -> 3, 3 has a loop
        let adj = vec![vec![1], vec![2], vec![1, 3], vec![3]];
        let comps = strongly_connected_components(&adj);
        assert_eq!(comps, vec![vec![0], vec![1, 2], vec![3]]);
        let of = component_map(4, &comps);
        assert_eq!(cycle_multiplicity(&adj, &comps[0], &of), CycleMultiplicity::None);
        assert_eq!(cycle_multiplicity(&adj, &comps[1], &of), CycleMultiplicity::One);
        assert_eq!(cycle_multiplicity(&adj, &comps[2], &of), CycleMultiplicity::One);
    }

    #[test]
    fn two_cycles_through_one_vertex() {
        // 0 -> 0 and 0 -> 1 -> 0
        let adj = vec![vec![0, 1], vec![0]];
        let comps = strongly_connected_components(&adj);
        assert_eq!(comps.len(), 1);
        let of = component_map(2, &comps);
        assert_eq!(cycle_multiplicity(&adj, &comps[0], &of), CycleMultiplicity::Many);
        assert_eq!(count_simple_cycles(&adj, 64), (2, false));
    }

    #[test]
    fn cycle_count_is_capped() {
        // complete digraph with loops on 5 vertices has many cycles
        let adj: Vec<Vec<usize>> = (0..5).map(|_| (0..5).collect()).collect();
        assert_eq!(count_simple_cycles(&adj, 10), (10, true));
        let (all, capped) = count_simple_cycles(&adj, 10_000);
        assert!(!capped);
        // loops + sum over k>=2 of C(5,k)(k-1)!
        assert_eq!(all, 5 + 10 + 20 + 30 + 24);
    }

    #[test]
    fn long_path_does_not_overflow_the_stack() {
        let n = 200_000;
        let adj: Vec<Vec<usize>> = (0..n).map(|v| if v + 1 < n { vec![v + 1] } else { vec![0] }).collect();
        let comps = strongly_connected_components(&adj);
        assert_eq!(comps.len(), 1);
    }
}
