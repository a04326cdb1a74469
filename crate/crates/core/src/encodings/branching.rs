//! Optimum branchings (Chu-Liu/Edmonds).

/// Weight of the minimum spanning arborescence rooted at `root`, or `None`
/// when some vertex is unreachable from the root.
///
/// `edges` are directed `(from, to, weight)` triples over vertices `0..n`.
pub fn min_arborescence(n: usize, root: usize, edges: &[(usize, usize, f64)]) -> Option<f64> {
    assert!(root < n, "root {root} outside {n} vertices");
    let mut n = n;
    let mut root = root;
    let mut edges: Vec<(usize, usize, f64)> = edges.iter().copied().filter(|&(u, v, w)| u != v && w.is_finite()).collect();
    let mut total = 0.0;
    loop {
        let mut best_in = vec![f64::INFINITY; n];
        let mut pred = vec![usize::MAX; n];
        for &(u, v, w) in &edges {
            if w < best_in[v] {
                best_in[v] = w;
                pred[v] = u;
            }
        }
        if (0..n).any(|v| v != root && pred[v] == usize::MAX) {
            return None;
        }
        best_in[root] = 0.0;

        // Walk predecessor chains; a walk that closes on itself marks a cycle.
        let mut comp = vec![usize::MAX; n];
        let mut visited_by = vec![usize::MAX; n];
        let mut cycles = 0;
        for v in 0..n {
            total += best_in[v];
            let mut x = v;
            while x != root && comp[x] == usize::MAX && visited_by[x] != v {
                visited_by[x] = v;
                x = pred[x];
            }
            if x != root && comp[x] == usize::MAX {
                let mut y = pred[x];
                while y != x {
                    comp[y] = cycles;
                    y = pred[y];
                }
                comp[x] = cycles;
                cycles += 1;
            }
        }
        if cycles == 0 {
            return Some(total);
        }
        for c in comp.iter_mut() {
            if *c == usize::MAX {
                *c = cycles;
                cycles += 1;
            }
        }
        edges = edges
            .into_iter()
            .filter_map(|(u, v, w)| {
                let (cu, cv) = (comp[u], comp[v]);
                (cu != cv).then(|| (cu, cv, w - best_in[v]))
            })
            .collect();
        n = cycles;
        root = comp[root];
    }
}

/// Minimum spanning arborescence over every choice of root.
pub fn min_branching_any_root(n: usize, edges: &[(usize, usize, f64)]) -> Option<f64> {
    (0..n)
        .filter_map(|r| min_arborescence(n, r, edges))
        .min_by(f64::total_cmp)
}

/// Maximum spanning arborescence over every choice of root.
pub fn max_branching_any_root(n: usize, edges: &[(usize, usize, f64)]) -> Option<f64> {
    let negated: Vec<_> = edges.iter().map(|&(u, v, w)| (u, v, -w)).collect();
    min_branching_any_root(n, &negated).map(|w| -w)
}
