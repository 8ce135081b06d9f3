#![allow(dead_code)]
//! Oracles shared by the integration tests, written without the library's algorithms.

use std::collections::BTreeMap;

use fibknot::braid::BraidWord;
use fibknot::invariants::AlexanderPolynomial;
use fibknot::linalg::LaurentMatrix;
use fibknot::poly::LaurentPoly;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Laurent polynomial as exponent -> coefficient, zero entries removed.
pub type Poly = BTreeMap<i32, i64>;

pub fn padd(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    for (e, c) in b {
        *out.entry(*e).or_insert(0) += c;
    }
    out.retain(|_, c| *c != 0);
    out
}

pub fn pmul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *out.entry(ea + eb).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

pub fn mono(c: i64, e: i32) -> Poly {
    if c == 0 {
        Poly::new()
    } else {
        Poly::from([(e, c)])
    }
}

/// Unreduced Burau matrix, built independently of the library.
pub fn burau_oracle(n: usize, word: &[i32]) -> Vec<Vec<Poly>> {
    let mut m: Vec<Vec<Poly>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| if r == c { mono(1, 0) } else { Poly::new() })
                .collect()
        })
        .collect();
    for &x in word {
        let i = x.unsigned_abs() as usize - 1;
        let block = if x > 0 {
            [
                [padd(&mono(1, 0), &mono(-1, 1)), mono(1, 1)],
                [mono(1, 0), Poly::new()],
            ]
        } else {
            [
                [Poly::new(), mono(1, 0)],
                [mono(1, -1), padd(&mono(1, 0), &mono(-1, -1))],
            ]
        };
        let mut next = m.clone();
        for row in m.iter().zip(next.iter_mut()) {
            let (src, dst) = row;
            for j in 0..2 {
                let mut acc = Poly::new();
                for k in 0..2 {
                    acc = padd(&acc, &pmul(&src[i + k], &block[k][j]));
                }
                dst[i + j] = acc;
            }
        }
        m = next;
    }
    m
}

pub fn all_words(letters: &[i32], max_len: usize) -> Vec<Vec<i32>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in letters {
                let mut v: Vec<i32> = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[derive(Clone, Copy, PartialEq)]
pub enum Ends {
    Closure,
    /// Caps joining positions (1,2) and (3,4) at top and bottom.
    Plat,
}

/// Alexander polynomial of a diagram drawn from vertical crossings, via the
/// Wirtinger presentation and Fox calculus. None if the diagram is a link.
pub fn diagram_alexander(strands: usize, word: &[i32], ends: Ends) -> Option<AlexanderPolynomial> {
    let levels = word.len();
    // A piece is (level, position); walking down from (l, p) passes crossing l.
    let step_down = |l: usize, p: usize| -> (usize, usize, bool) {
        let i = word[l].unsigned_abs() as usize - 1;
        let q = if p == i {
            i + 1
        } else if p == i + 1 {
            i
        } else {
            p
        };
        (l + 1, q, p == i)
    };
    let step_up = |l: usize, p: usize| -> (usize, usize, bool) {
        let i = word[l - 1].unsigned_abs() as usize - 1;
        let q = if p == i {
            i + 1
        } else if p == i + 1 {
            i
        } else {
            p
        };
        (l - 1, q, q == i)
    };
    let cap = |p: usize| p ^ 1;

    // Events: (crossing, on strand A going from position i to i + 1, moving down).
    let mut events: Vec<(usize, bool, bool)> = Vec::new();
    let mut visited = vec![vec![false; strands]; levels + 1];
    let (mut l, mut p, mut down) = (0usize, 0usize, true);
    let mut count = 0;
    loop {
        if visited[l][p] && l == 0 && p == 0 && down {
            break;
        }
        visited[l][p] = true;
        count += 1;
        if count > 4 * (levels + 1) * strands + 8 {
            panic!("walk does not close");
        }
        if down {
            if l == levels {
                match ends {
                    Ends::Closure => l = 0,
                    Ends::Plat => {
                        p = cap(p);
                        down = false;
                    }
                }
                continue;
            }
            let touches = {
                let i = word[l].unsigned_abs() as usize - 1;
                p == i || p == i + 1
            };
            let (nl, np, on_a) = step_down(l, p);
            if touches {
                events.push((l, on_a, true));
            }
            (l, p) = (nl, np);
        } else {
            if l == 0 {
                p = cap(p);
                down = true;
                continue;
            }
            let touches = {
                let i = word[l - 1].unsigned_abs() as usize - 1;
                p == i || p == i + 1
            };
            let (nl, np, on_a) = step_up(l, p);
            if touches {
                events.push((l - 1, on_a, false));
            }
            (l, p) = (nl, np);
        }
    }
    // A knot visits every piece; under closure the bottom row is the top row again.
    let rows = match ends {
        Ends::Closure => &visited[..levels.max(1)],
        Ends::Plat => &visited[..],
    };
    if rows.iter().flatten().any(|v| !v) {
        return None;
    }
    if levels == 0 {
        return Some(AlexanderPolynomial::one());
    }

    let over_is_a = |k: usize| word[k] > 0;
    let dir = |on_a: bool, down: bool| -> (i64, i64) {
        match (on_a, down) {
            (true, true) => (1, -1),
            (true, false) => (-1, 1),
            (false, true) => (-1, -1),
            (false, false) => (1, 1),
        }
    };
    let mut over_dir = vec![(0, 0); levels];
    let mut under_dir = vec![(0, 0); levels];
    let is_under = |e: &(usize, bool, bool)| e.1 != over_is_a(e.0);
    let start = events
        .iter()
        .position(is_under)
        .expect("a knotted diagram has an undercrossing");
    events.rotate_left(start + 1);
    let mut over_arc = vec![usize::MAX; levels];
    let mut in_arc = vec![usize::MAX; levels];
    let mut out_arc = vec![usize::MAX; levels];
    let mut arc = 0usize;
    for e in &events {
        let (k, on_a, down) = *e;
        if is_under(e) {
            in_arc[k] = arc;
            arc = (arc + 1) % levels;
            out_arc[k] = arc;
            under_dir[k] = dir(on_a, down);
        } else {
            over_arc[k] = arc;
            over_dir[k] = dir(on_a, down);
        }
    }
    assert_eq!(events.len(), 2 * levels);

    let t = LaurentPoly::t();
    let one = LaurentPoly::one();
    let mut m = LaurentMatrix::zeros(levels);
    for k in 0..levels {
        let (o, u) = (over_dir[k], under_dir[k]);
        let positive = o.0 * u.1 - o.1 * u.0 > 0;
        let (c_over, c_in, c_out) = if positive {
            (&one - &t, t.clone(), -&one)
        } else {
            (&t - &one, one.clone(), -&t)
        };
        for (col, c) in [(over_arc[k], c_over), (in_arc[k], c_in), (out_arc[k], c_out)] {
            let v = m.get(k, col) + &c;
            m.set(k, col, v);
        }
    }
    let d = levels - 1;
    let mut minor = LaurentMatrix::zeros(d);
    for r in 0..d {
        for c in 0..d {
            minor.set(r, c, m.get(r, c).clone());
        }
    }
    let det = if d == 0 { LaurentPoly::one() } else { minor.det() };
    Some(AlexanderPolynomial::new(&det))
}

pub fn random_knot_word(
    rng: &mut StdRng,
    strands: usize,
    len: usize,
    signs: Option<&[bool]>,
) -> Option<BraidWord> {
    let ints: Vec<i32> = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..strands as i32);
            let pos = match signs {
                Some(s) => s[g as usize - 1],
                None => rng.gen_bool(0.5),
            };
            if pos {
                g
            } else {
                -g
            }
        })
        .collect();
    let w = BraidWord::from_ints(strands, &ints).ok()?;
    w.is_knot().then_some(w)
}

/// Homogeneous knot braids: each generator appears with one sign only.
pub fn homogeneous_corpus() -> Vec<BraidWord> {
    let mut corpus: Vec<BraidWord> = (0..=6)
        .map(|k| BraidWord::from_ints(2, &vec![1; 2 * k + 1]).unwrap())
        .collect();
    let mut rng = StdRng::seed_from_u64(0x00b0_a7d5);
    while corpus.len() < 50 {
        let n = rng.gen_range(3..=6);
        let signs: Vec<bool> = (1..n).map(|_| rng.gen_bool(0.5)).collect();
        let len = rng.gen_range(n..=3 * n + 4);
        let Some(w) = random_knot_word(&mut rng, n, len, Some(&signs)) else {
            continue;
        };
        if (1..n).all(|i| w.occurrences(i) > 0) {
            corpus.push(w);
        }
    }
    corpus
}
