use crate::error::{check_cap, Limits, Result};
use crate::graph::Graph;

/// A maximum independent set; among those, the lexicographically least.
pub fn max_independent_set(g: &Graph) -> Result<Vec<usize>> {
    max_independent_set_with(g, &Limits::default())
}

pub fn max_independent_set_with(g: &Graph, limits: &Limits) -> Result<Vec<usize>> {
    check_cap("independent set", g.n(), limits.independent_set.min(128))?;
    let masks = g.masks();
    let mut best = 0u128;
    let all = if g.n() == 128 { u128::MAX } else { (1u128 << g.n()) - 1 };
    // include-first search visits maximum sets in lexicographic order, and
    // only a strictly larger set replaces the incumbent
    fn go(masks: &[u128], cur: u128, cand: u128, best: &mut u128) {
        if cand == 0 {
            if cur.count_ones() > best.count_ones() {
                *best = cur;
            }
            return;
        }
        if cur.count_ones() + cand.count_ones() <= best.count_ones() {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        let bit = 1u128 << v;
        go(masks, cur | bit, cand & !bit & !masks[v], best);
        go(masks, cur, cand & !bit, best);
    }
    go(&masks, 0, all, &mut best);
    let mut out = Vec::new();
    while best != 0 {
        out.push(best.trailing_zeros() as usize);
        best &= best - 1;
    }
    Ok(out)
}
