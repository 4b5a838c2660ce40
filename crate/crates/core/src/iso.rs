//! Order-isomorphism search.
//!
//! Elements are first partitioned by a refined structural colour (heights,
//! principal ideal/filter sizes, cover degrees, then iterated neighbourhood
//! colours). The search then walks the first poset in a linear extension and
//! maps each element to an unused same-coloured upper cover of the image of
//! one of its lower covers, checking comparability against everything mapped
//! so far.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::poset::Poset;

fn depths(p: &Poset) -> Vec<usize> {
    let mut d = vec![0usize; p.len()];
    for &x in p.topological_order().iter().rev() {
        d[x] = p
            .upper_covers(x)
            .iter()
            .map(|&u| d[u] + 1)
            .max()
            .unwrap_or(0);
    }
    d
}

/// Joint colouring of two posets so colours are comparable across them.
fn joint_colours(p: &Poset, q: &Poset) -> (Vec<usize>, Vec<usize>) {
    fn initial(p: &Poset) -> Vec<[usize; 6]> {
        let h = p.heights();
        let d = depths(p);
        (0..p.len())
            .map(|x| {
                [
                    h[x],
                    d[x],
                    p.down(x).count_ones(..),
                    p.up(x).count_ones(..),
                    p.lower_covers(x).len(),
                    p.upper_covers(x).len(),
                ]
            })
            .collect()
    }
    fn relabel<K: Ord + Clone>(a: &[K], b: &[K]) -> (Vec<usize>, Vec<usize>, usize) {
        let mut ids = BTreeMap::new();
        for k in a.iter().chain(b) {
            ids.entry(k.clone()).or_insert(0usize);
        }
        for (i, v) in ids.values_mut().enumerate() {
            *v = i;
        }
        let ca = a.iter().map(|k| ids[k]).collect();
        let cb = b.iter().map(|k| ids[k]).collect();
        (ca, cb, ids.len())
    }
    let (mut cp, mut cq, mut classes) = relabel(&initial(p), &initial(q));
    loop {
        let sig = |poset: &Poset, col: &[usize]| -> Vec<(usize, Vec<usize>, Vec<usize>)> {
            (0..poset.len())
                .map(|x| {
                    let mut lo: Vec<usize> = poset.lower_covers(x).iter().map(|&y| col[y]).collect();
                    let mut hi: Vec<usize> = poset.upper_covers(x).iter().map(|&y| col[y]).collect();
                    lo.sort_unstable();
                    hi.sort_unstable();
                    (col[x], lo, hi)
                })
                .collect()
        };
        let (np, nq, n) = relabel(&sig(p, &cp), &sig(q, &cq));
        cp = np;
        cq = nq;
        if n == classes {
            break;
        }
        classes = n;
    }
    (cp, cq)
}

/// Finds an order isomorphism `p -> q` as an index map, or `None`.
///
/// Deterministic: candidates are always tried in increasing index order, so
/// the result is the first isomorphism in that search order.
pub fn find_isomorphism(p: &Poset, q: &Poset, limits: &Limits) -> Result<Option<Vec<usize>>> {
    let n = p.len();
    if n > limits.max_iso || q.len() > limits.max_iso {
        return Err(Error::size("poset size for isomorphism search", limits.max_iso));
    }
    if n != q.len() || p.covers().len() != q.covers().len() {
        return Ok(None);
    }
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let (cp, cq) = joint_colours(p, q);
    let histogram = |c: &[usize]| {
        let mut v = c.to_vec();
        v.sort_unstable();
        v
    };
    if histogram(&cp) != histogram(&cq) {
        return Ok(None);
    }

    let order = p.topological_order();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    // Per depth: candidate list and the cursor into it.
    let mut frames: Vec<(Vec<usize>, usize)> = Vec::with_capacity(n);

    let candidates = |v: usize, map: &[usize], used: &[bool]| -> Vec<usize> {
        let pool: Vec<usize> = match p.lower_covers(v).first() {
            Some(&l) => q.upper_covers(map[l]).to_vec(),
            None => (0..n).filter(|&w| q.lower_covers(w).is_empty()).collect(),
        };
        pool.into_iter()
            .filter(|&w| !used[w] && cq[w] == cp[v])
            .collect()
    };

    frames.push((candidates(order[0], &map, &used), 0));
    while !frames.is_empty() {
        let depth = frames.len() - 1;
        let v = order[depth];
        let (cands, cursor) = frames.last_mut().expect("non-empty");
        if map[v] != usize::MAX {
            used[map[v]] = false;
            map[v] = usize::MAX;
        }
        let mut chosen = None;
        while *cursor < cands.len() {
            let w = cands[*cursor];
            *cursor += 1;
            let consistent = order[..depth].iter().all(|&u| {
                p.leq(u, v) == q.leq(map[u], w) && !q.leq(w, map[u])
            });
            if consistent {
                chosen = Some(w);
                break;
            }
        }
        match chosen {
            Some(w) => {
                map[v] = w;
                used[w] = true;
                if depth + 1 == n {
                    return Ok(Some(map));
                }
                let next = candidates(order[depth + 1], &map, &used);
                frames.push((next, 0));
            }
            None => {
                frames.pop();
            }
        }
    }
    Ok(None)
}

impl Poset {
    /// An isomorphism onto `other` as `(name in self, name in other)` pairs in
    /// index order of `self`, or `None`.
    pub fn is_isomorphic(&self, other: &Poset, limits: &Limits) -> Result<Option<Vec<(String, String)>>> {
        Ok(find_isomorphism(self, other, limits)?.map(|m| {
            m.iter()
                .enumerate()
                .map(|(a, &b)| (self.name(a).to_string(), other.name(b).to_string()))
                .collect()
        }))
    }
}

/// True iff `map` is a bijection `p -> q` preserving and reflecting order.
pub fn is_order_isomorphism(p: &Poset, q: &Poset, map: &[usize]) -> bool {
    if p.len() != q.len() || map.len() != p.len() {
        return false;
    }
    let mut seen = vec![false; q.len()];
    for &w in map {
        if w >= q.len() || std::mem::replace(&mut seen[w], true) {
            return false;
        }
    }
    (0..p.len()).all(|a| (0..p.len()).all(|b| p.leq(a, b) == q.leq(map[a], map[b])))
}
