//! Ribbon graphs (graphs with a cyclic order of half-edges at each vertex) and face tracing.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RibbonGraph {
    /// `twin[h]` is the other half of the edge containing half-edge `h`.
    twin: Vec<usize>,
    /// Half-edges around each vertex in cyclic order.
    rotation: Vec<Vec<usize>>,
}

impl RibbonGraph {
    pub fn new(twin: Vec<usize>, rotation: Vec<Vec<usize>>) -> Result<Self> {
        let h = twin.len();
        if h % 2 == 1 {
            return Err(Error::MalformedRotation("odd number of half-edges".into()));
        }
        for (k, &t) in twin.iter().enumerate() {
            if t >= h || t == k || twin[t] != k {
                return Err(Error::MalformedRotation(format!(
                    "half-edge {k} has no proper twin"
                )));
            }
        }
        let mut seen = vec![false; h];
        for x in rotation.iter().flatten() {
            if *x >= h || seen[*x] {
                return Err(Error::MalformedRotation(format!(
                    "half-edge {x} misplaced in rotation"
                )));
            }
            seen[*x] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::MalformedRotation(
                "a half-edge is missing from the rotation".into(),
            ));
        }
        Ok(RibbonGraph { twin, rotation })
    }

    /// Build from edges given as pairs of half-edges.
    pub fn from_edges(edges: &[(usize, usize)], rotation: Vec<Vec<usize>>) -> Result<Self> {
        let mut twin = vec![usize::MAX; 2 * edges.len()];
        for &(a, b) in edges {
            if a >= twin.len() || b >= twin.len() || twin[a] != usize::MAX || twin[b] != usize::MAX {
                return Err(Error::MalformedRotation(format!("bad edge ({a}, {b})")));
            }
            twin[a] = b;
            twin[b] = a;
        }
        Self::new(twin, rotation)
    }

    pub fn vertices(&self) -> usize {
        self.rotation.len()
    }

    pub fn edges(&self) -> usize {
        self.twin.len() / 2
    }

    /// Boundary components of the thickened graph: orbits of `h -> next(twin(h))`.
    pub fn faces(&self) -> usize {
        let h = self.twin.len();
        let mut succ = vec![0; h];
        for cyc in &self.rotation {
            for (k, &x) in cyc.iter().enumerate() {
                succ[x] = cyc[(k + 1) % cyc.len()];
            }
        }
        let mut seen = vec![false; h];
        let mut faces = 0;
        for start in 0..h {
            if seen[start] {
                continue;
            }
            faces += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = succ[self.twin[x]];
            }
        }
        faces
    }

    /// `V - E + F` of the closed surface the ribbon graph embeds in.
    pub fn euler(&self) -> i64 {
        self.vertices() as i64 - self.edges() as i64 + self.faces() as i64
    }
}

/// The union of a chain of `2g` curves as a ribbon graph, one vertex per
/// crossing of consecutive curves. `flips[v]` picks which of the two
/// alternating cyclic orders is used at crossing `v`.
pub fn chain_ribbon_graph(genus: u32, flips: &[bool]) -> Result<RibbonGraph> {
    let curves = 2 * genus as usize;
    if genus == 0 {
        return Err(Error::InvalidFamily("genus must be at least 1".into()));
    }
    let v = curves - 1;
    if flips.len() != v {
        return Err(Error::MalformedRotation(format!(
            "need {v} rotation choices, got {}",
            flips.len()
        )));
    }
    // Curve c (0-based) meets crossing c - 1 and crossing c. At each crossing it
    // owns two half-edges, leaving in opposite directions along the curve.
    let mut ids = 0usize..;
    let mut half = || ids.next().expect("unbounded");
    // at[k][0] holds the half-edges of curve k at crossing k, at[k][1] those of curve k + 1.
    let mut at: Vec<[[usize; 2]; 2]> = vec![[[usize::MAX; 2]; 2]; v];
    let mut edges = Vec::new();
    for c in 0..curves {
        let lower = c.checked_sub(1);
        let upper = (c < v).then_some(c);
        match (lower, upper) {
            (Some(x), Some(y)) => {
                for arc in 0..2 {
                    let hx = half();
                    let hy = half();
                    edges.push((hx, hy));
                    at[x][1][arc] = hx;
                    at[y][0][arc] = hy;
                }
            }
            (Some(x), None) | (None, Some(x)) => {
                let slot = usize::from(lower.is_some());
                let a = half();
                let b = half();
                edges.push((a, b));
                at[x][slot] = [a, b];
            }
            (None, None) => unreachable!("a chain has at least two curves"),
        }
    }
    let rotation = (0..v)
        .map(|k| {
            let [p, q] = at[k];
            if flips[k] {
                vec![p[0], q[0], p[1], q[1]]
            } else {
                vec![p[0], q[1], p[1], q[0]]
            }
        })
        .collect();
    RibbonGraph::from_edges(&edges, rotation)
}

/// First rotation choice (in binary counting order) whose chain graph has `faces` faces.
pub fn search_chain_embedding(genus: u32, faces: usize) -> Result<Option<Vec<bool>>> {
    let v = 2 * genus as usize - 1;
    if v >= 24 {
        return Err(Error::Overflow("rotation search space"));
    }
    for mask in 0u32..(1 << v) {
        let flips: Vec<bool> = (0..v).map(|k| mask >> k & 1 == 1).collect();
        if chain_ribbon_graph(genus, &flips)?.faces() == faces {
            return Ok(Some(flips));
        }
    }
    Ok(None)
}
