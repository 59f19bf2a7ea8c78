use std::collections::{BTreeSet, HashSet};

use super::{Grammar, Sym};
use crate::symbol::Word;

/// Shortest derivable length per nonterminal (`usize::MAX` if unproductive).
pub(super) fn min_lengths(g: &Grammar) -> Vec<usize> {
    let mut min = vec![usize::MAX; g.num_nonterminals()];
    loop {
        let mut changed = false;
        for (n, body) in g.productions() {
            let mut total = 0usize;
            for s in body {
                let l = match *s {
                    Sym::T(_) => 1,
                    Sym::N(m) => min[m],
                };
                total = total.saturating_add(l);
            }
            if total < min[n] {
                min[n] = total;
                changed = true;
            }
        }
        if !changed {
            return min;
        }
    }
}

/// Length-indexed dynamic programme over the binarized grammar. Each
/// nonterminal is only expanded up to the budget left over by its cheapest
/// surrounding context.
pub(super) fn enumerate(g: &Grammar, max_len: usize) -> BTreeSet<Word> {
    let g = g.trim().binarized();
    let n = g.num_nonterminals();
    let nullable = g.nullable();
    let min = min_lengths(&g);
    if min[g.start()] == usize::MAX {
        return BTreeSet::new();
    }

    let mut ctx = vec![usize::MAX; n];
    ctx[g.start()] = 0;
    loop {
        let mut changed = false;
        for (a, body) in g.productions() {
            if ctx[a] == usize::MAX {
                continue;
            }
            for (i, s) in body.iter().enumerate() {
                if let Sym::N(x) = *s {
                    let others: usize = body
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != i)
                        .map(|(_, t)| match *t {
                            Sym::T(_) => 1,
                            Sym::N(m) => min[m],
                        })
                        .sum();
                    let c = ctx[a].saturating_add(others);
                    if c < ctx[x] {
                        ctx[x] = c;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let budget: Vec<usize> = ctx.iter().map(|&c| max_len.saturating_sub(c)).collect();
    let live = |x: usize, len: usize| ctx[x] != usize::MAX && len <= budget[x];

    // sets[x][len]
    let mut sets: Vec<Vec<HashSet<Word>>> = (0..n)
        .map(|x| vec![HashSet::new(); if ctx[x] == usize::MAX { 1 } else { budget[x] + 1 }])
        .collect();

    // A ← X edges that do not change the length
    let mut same_len: Vec<(usize, usize)> = Vec::new();
    for (a, body) in g.productions() {
        match body.as_slice() {
            [Sym::N(x)] => same_len.push((a, *x)),
            [Sym::N(x), Sym::N(y)] => {
                if nullable[*y] {
                    same_len.push((a, *x));
                }
                if nullable[*x] {
                    same_len.push((a, *y));
                }
            }
            _ => {}
        }
    }

    for len in 1..=max_len {
        for (a, body) in g.productions() {
            if !live(a, len) {
                continue;
            }
            let mut fresh: Vec<Word> = Vec::new();
            match body.as_slice() {
                [Sym::T(t)] if len == 1 => fresh.push(vec![*t]),
                [Sym::T(t), Sym::T(u)] if len == 2 => fresh.push(vec![*t, *u]),
                [Sym::T(t), Sym::N(y)] if len >= 2 && live(*y, len - 1) => {
                    for w in &sets[*y][len - 1] {
                        let mut v = Vec::with_capacity(len);
                        v.push(*t);
                        v.extend_from_slice(w);
                        fresh.push(v);
                    }
                }
                [Sym::N(x), Sym::T(u)] if len >= 2 && live(*x, len - 1) => {
                    for w in &sets[*x][len - 1] {
                        let mut v = w.clone();
                        v.push(*u);
                        fresh.push(v);
                    }
                }
                [Sym::T(t), Sym::N(y)] if len == 1 && nullable[*y] => fresh.push(vec![*t]),
                [Sym::N(x), Sym::T(u)] if len == 1 && nullable[*x] => fresh.push(vec![*u]),
                [Sym::N(x), Sym::N(y)] => {
                    for i in 1..len {
                        if !live(*x, i) || !live(*y, len - i) {
                            continue;
                        }
                        let (left, right) = (&sets[*x][i], &sets[*y][len - i]);
                        if left.is_empty() || right.is_empty() {
                            continue;
                        }
                        for l in left {
                            for r in right {
                                let mut v = Vec::with_capacity(len);
                                v.extend_from_slice(l);
                                v.extend_from_slice(r);
                                fresh.push(v);
                            }
                        }
                    }
                }
                _ => {}
            }
            sets[a][len].extend(fresh);
        }
        loop {
            let mut changed = false;
            for &(a, x) in &same_len {
                if !live(a, len) || !live(x, len) || a == x {
                    continue;
                }
                let add: Vec<Word> = sets[x][len]
                    .iter()
                    .filter(|w| !sets[a][len].contains(*w))
                    .cloned()
                    .collect();
                if !add.is_empty() {
                    sets[a][len].extend(add);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
    }

    let s = g.start();
    let mut out: BTreeSet<Word> = sets[s].iter().flatten().cloned().collect();
    if nullable[s] {
        out.insert(Vec::new());
    }
    out
}
