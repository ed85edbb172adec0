//! Longest cycle length by dynamic programming over a tree decomposition.
//!
//! A state assigns every vertex of the working bag a code: untouched, interior
//! of a partial path, or a path end together with the position of its partner
//! end. Each graph edge is decided when its first endpoint is forgotten.
//! A cycle closes only when no other partial path is open, and closed cycles
//! update a global best instead of being carried in the state.

use std::collections::HashMap;

use super::CycleError;
use crate::decomposition::{validate, TreeDecomposition};
use crate::graph::{Graph, Vertex};

const FREE: u8 = u8::MAX;
const INNER: u8 = u8::MAX - 1;

type State = Vec<u8>;

struct Table {
    bag: Vec<Vertex>,
    states: HashMap<State, u32>,
}

pub fn longest_cycle_length_td(g: &Graph, td: &TreeDecomposition) -> Result<usize, CycleError> {
    let violations = validate(g, td);
    if !violations.is_empty() {
        return Err(CycleError::InvalidDecomposition(violations));
    }
    if td.node_count() == 0 {
        return Ok(0);
    }
    let mut best = 0u32;
    let (parent, order) = td.rooted(0);
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); td.node_count()];
    for &t in &order {
        if let Some(p) = parent[t] {
            children[p].push(t);
        }
    }
    let mut tables: Vec<Option<Table>> = (0..td.node_count()).map(|_| None).collect();
    for &t in order.iter().rev() {
        let target: Vec<Vertex> = td.bag(t).to_vec();
        let mut acc: Option<Table> = None;
        for &c in &children[t] {
            let mut table = tables[c].take().expect("children come first");
            for v in table.bag.clone() {
                if !target.contains(&v) {
                    forget(g, &mut table, v, &mut best);
                }
            }
            for &v in &target {
                if !table.bag.contains(&v) {
                    introduce(&mut table, v);
                }
            }
            acc = Some(match acc {
                None => table,
                Some(prev) => join(&prev, &table, &mut best),
            });
        }
        let table = acc.unwrap_or_else(|| {
            let mut table = Table { bag: Vec::new(), states: HashMap::from([(Vec::new(), 0)]) };
            for &v in &target {
                introduce(&mut table, v);
            }
            table
        });
        tables[t] = Some(table);
    }
    let mut root = tables[0].take().expect("root processed");
    for v in root.bag.clone() {
        forget(g, &mut root, v, &mut best);
    }
    Ok(best as usize)
}

fn introduce(table: &mut Table, v: Vertex) {
    let i = table.bag.partition_point(|&x| x < v);
    table.bag.insert(i, v);
    let shift = |code: u8| if code < INNER && code as usize >= i { code + 1 } else { code };
    table.states = table
        .states
        .drain()
        .map(|(s, val)| {
            let mut next: State = s.into_iter().map(shift).collect();
            next.insert(i, FREE);
            (next, val)
        })
        .collect();
}

fn forget(g: &Graph, table: &mut Table, v: Vertex, best: &mut u32) {
    let i = table.bag.iter().position(|&x| x == v).expect("vertex in bag");
    for j in 0..table.bag.len() {
        if j == i || !g.has_edge(v, table.bag[j]) {
            continue;
        }
        let mut next = table.states.clone();
        for (s, &val) in &table.states {
            if let Some(t) = add_edge(s, i, j, val, best) {
                upsert(&mut next, t, val + 1);
            }
        }
        table.states = next;
    }
    table.bag.remove(i);
    let shift = |code: u8| if code < INNER && code as usize > i { code - 1 } else { code };
    let mut out = HashMap::with_capacity(table.states.len());
    for (s, val) in table.states.drain() {
        if s[i] != FREE && s[i] != INNER {
            continue;
        }
        let next: State = s.iter().enumerate().filter(|&(p, _)| p != i).map(|(_, &c)| shift(c)).collect();
        upsert(&mut out, next, val);
    }
    table.states = out;
}

/// Adds edge `(i, j)` to state `s`; closing the only open path updates `best`.
fn add_edge(s: &State, i: usize, j: usize, val: u32, best: &mut u32) -> Option<State> {
    let (a, b) = (s[i], s[j]);
    if a == INNER || b == INNER {
        return None;
    }
    let mut t = s.clone();
    match (a == FREE, b == FREE) {
        (true, true) => {
            t[i] = j as u8;
            t[j] = i as u8;
        }
        (true, false) => {
            t[i] = b;
            t[b as usize] = i as u8;
            t[j] = INNER;
        }
        (false, true) => {
            t[j] = a;
            t[a as usize] = j as u8;
            t[i] = INNER;
        }
        (false, false) if a as usize == j => {
            let others_open = s.iter().enumerate().any(|(p, &c)| p != i && p != j && c < INNER);
            if !others_open {
                *best = (*best).max(val + 1);
            }
            return None;
        }
        (false, false) => {
            t[a as usize] = b;
            t[b as usize] = a;
            t[i] = INNER;
            t[j] = INNER;
        }
    }
    Some(t)
}

fn degree(code: u8) -> u8 {
    match code {
        FREE => 0,
        INNER => 2,
        _ => 1,
    }
}

fn join(left: &Table, right: &Table, best: &mut u32) -> Table {
    debug_assert_eq!(left.bag, right.bag);
    let k = left.bag.len();
    let mut states = HashMap::new();
    for (s1, &v1) in &left.states {
        'pair: for (s2, &v2) in &right.states {
            let mut out = vec![FREE; k];
            for p in 0..k {
                match degree(s1[p]) + degree(s2[p]) {
                    0 => {}
                    1 | 2 => out[p] = INNER,
                    _ => continue 'pair,
                }
            }
            let is_end = |p: usize| degree(s1[p]) + degree(s2[p]) == 1;
            // walk alternating between the two sides until the far end
            let mut visited = vec![false; k];
            for e in 0..k {
                if !is_end(e) || visited[e] {
                    continue;
                }
                let mut cur = e;
                let mut use_left = s1[e] < INNER;
                visited[e] = true;
                loop {
                    let nxt = if use_left { s1[cur] } else { s2[cur] } as usize;
                    visited[nxt] = true;
                    if is_end(nxt) {
                        out[e] = nxt as u8;
                        out[nxt] = e as u8;
                        break;
                    }
                    cur = nxt;
                    use_left = !use_left;
                }
            }
            let linked: Vec<usize> =
                (0..k).filter(|&p| !visited[p] && degree(s1[p]) == 1 && degree(s2[p]) == 1).collect();
            if !linked.is_empty() {
                // closed loops: valid only as the single component
                let mut loops = 0;
                let mut seen = vec![false; k];
                for &x in &linked {
                    if seen[x] {
                        continue;
                    }
                    loops += 1;
                    let mut cur = x;
                    let mut use_left = true;
                    while !seen[cur] {
                        seen[cur] = true;
                        cur = if use_left { s1[cur] } else { s2[cur] } as usize;
                        use_left = !use_left;
                    }
                }
                let open = (0..k).any(is_end);
                if loops == 1 && !open {
                    *best = (*best).max(v1 + v2);
                }
                continue;
            }
            upsert(&mut states, out, v1 + v2);
        }
    }
    Table { bag: left.bag.clone(), states }
}

fn upsert(map: &mut HashMap<State, u32>, s: State, val: u32) {
    let e = map.entry(s).or_insert(val);
    *e = (*e).max(val);
}
