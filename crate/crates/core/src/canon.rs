//! Canonical labeling of quartic graphs.
//!
//! Colorings are refined to equitable ones by neighbor-color signatures; a non-discrete
//! coloring is split by individualizing each vertex of its first largest cell in turn.
//! Every discrete coloring is a relabeling of the graph and the least relabeled
//! adjacency list is the certificate. Leaves with equal relabelings yield automorphisms,
//! which prune sibling branches by orbit.

use crate::error::{Error, Result};
use crate::graph::QuartGraph;

/// Largest supported order.
pub const SIZE_CAP: usize = 128;

/// Equal for two graphs exactly when they are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCertificate(Vec<u8>);

impl CanonicalCertificate {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

#[derive(Debug, Clone)]
pub struct Labeling {
    pub certificate: CanonicalCertificate,
    /// `canonical_position[v]` is the position of vertex `v` in the canonical relabeling.
    pub canonical_position: Vec<usize>,
    /// Automorphisms found during the search, as vertex maps.
    pub generators: Vec<Vec<usize>>,
}

fn refine(g: &QuartGraph, colors: &mut [u32]) {
    let n = colors.len();
    let mut count = distinct(colors);
    let mut order: Vec<usize> = (0..n).collect();
    loop {
        let sigs: Vec<[u32; 5]> = (0..n)
            .map(|v| {
                let mut nb = g.neighbors(v).map(|w| colors[w]);
                nb.sort_unstable();
                [colors[v], nb[0], nb[1], nb[2], nb[3]]
            })
            .collect();
        order.sort_unstable_by_key(|&v| sigs[v]);
        let mut rank = 0;
        for i in 0..n {
            if i > 0 && sigs[order[i]] != sigs[order[i - 1]] {
                rank += 1;
            }
            colors[order[i]] = rank;
        }
        let new_count = rank as usize + 1;
        if new_count == count {
            return;
        }
        count = new_count;
    }
}

fn distinct(colors: &[u32]) -> usize {
    let mut seen = vec![false; colors.len()];
    colors
        .iter()
        .filter(|&&c| !std::mem::replace(&mut seen[c as usize], true))
        .count()
}

fn individualize(colors: &[u32], v: usize) -> Vec<u32> {
    let c = colors[v];
    colors
        .iter()
        .enumerate()
        .map(|(w, &x)| if x > c || (x == c && w != v) { x + 1 } else { x })
        .collect()
}

/// First color class of maximum size, if any class has more than one vertex.
fn target_cell(colors: &[u32]) -> Option<u32> {
    let mut sizes = vec![0usize; colors.len()];
    for &c in colors {
        sizes[c as usize] += 1;
    }
    let (best, &size) = sizes
        .iter()
        .enumerate()
        .max_by(|(i, x), (j, y)| x.cmp(y).then(j.cmp(i)))?;
    (size > 1).then_some(best as u32)
}

/// Orbit representative (least vertex) of each vertex under the group generated by `gens`.
pub fn orbits<'a>(n: usize, gens: impl IntoIterator<Item = &'a Vec<usize>>) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for g in gens {
        for (v, &w) in g.iter().enumerate() {
            let (a, b) = (find(&mut parent, v), find(&mut parent, w));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    (0..n).map(|v| find(&mut parent, v)).collect()
}

#[derive(Clone)]
struct Leaf {
    position: Vec<u32>,
    inverse: Vec<usize>,
    cert: Vec<u8>,
    path: Vec<usize>,
}

struct Search<'a> {
    g: &'a QuartGraph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn leaf(&mut self, position: Vec<u32>, path: &[usize]) -> Option<usize> {
        let n = position.len();
        let mut inverse = vec![0; n];
        for (v, &p) in position.iter().enumerate() {
            inverse[p as usize] = v;
        }
        let mut cert = Vec::with_capacity(1 + 4 * n);
        cert.push(n as u8);
        for &v in &inverse {
            let mut row = self.g.neighbors(v).map(|w| position[w] as u8);
            row.sort_unstable();
            cert.extend_from_slice(&row);
        }
        let leaf = Leaf {
            position,
            inverse,
            cert,
            path: path.to_vec(),
        };
        let Some(first) = &self.first else {
            self.best = Some(leaf.clone());
            self.first = Some(leaf);
            return None;
        };
        if leaf.cert == first.cert {
            let gamma = map_between(&leaf, first);
            let level = common_prefix(&leaf.path, &first.path);
            self.add_generator(gamma);
            return Some(level);
        }
        let best = self.best.as_ref().expect("set with first leaf");
        match leaf.cert.cmp(&best.cert) {
            std::cmp::Ordering::Equal => {
                let gamma = map_between(&leaf, best);
                self.add_generator(gamma);
            }
            std::cmp::Ordering::Less => self.best = Some(leaf),
            std::cmp::Ordering::Greater => {}
        }
        None
    }

    fn add_generator(&mut self, gamma: Vec<usize>) {
        if gamma.iter().enumerate().any(|(v, &w)| v != w) {
            self.generators.push(gamma);
        }
    }

    /// Explores the subtree below `colors`; `Some(level)` abandons all nodes deeper than `level`.
    fn node(&mut self, mut colors: Vec<u32>, path: &mut Vec<usize>) -> Option<usize> {
        refine(self.g, &mut colors);
        let Some(cell) = target_cell(&colors) else {
            return self.leaf(colors, path);
        };
        let depth = path.len();
        let members: Vec<usize> = (0..colors.len()).filter(|&v| colors[v] == cell).collect();
        let mut tried: Vec<usize> = Vec::new();
        let mut orbit_cache: Option<(usize, Vec<usize>)> = None;
        for w in members {
            if !tried.is_empty() {
                let stale = orbit_cache.as_ref().is_none_or(|(k, _)| *k != self.generators.len());
                if stale {
                    let fixing = self.generators.iter().filter(|g| path.iter().all(|&p| g[p] == p));
                    orbit_cache = Some((self.generators.len(), orbits(colors.len(), fixing)));
                }
                let orb = &orbit_cache.as_ref().expect("just computed").1;
                if tried.iter().any(|&t| orb[t] == orb[w]) {
                    continue;
                }
            }
            tried.push(w);
            path.push(w);
            let jump = self.node(individualize(&colors, w), path);
            path.pop();
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }
}

/// Vertex map sending the vertex at each position of `from` to the vertex at the same
/// position of `to`.
fn map_between(from: &Leaf, to: &Leaf) -> Vec<usize> {
    from.position.iter().map(|&p| to.inverse[p as usize]).collect()
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Canonical labeling with respect to an initial vertex coloring. Colors must be
/// `0..k` with every value used; they are part of the isomorphism type.
pub fn canonical_form_colored(g: &QuartGraph, colors: &[u32]) -> Result<Labeling> {
    let n = g.order();
    if n > SIZE_CAP {
        return Err(Error::SizeCap { n, cap: SIZE_CAP });
    }
    assert_eq!(colors.len(), n, "one color per vertex");
    let mut search = Search {
        g,
        first: None,
        best: None,
        generators: Vec::new(),
    };
    search.node(colors.to_vec(), &mut Vec::new());
    let best = search.best.expect("the search reaches at least one leaf");
    let mut cert = best.cert;
    cert.extend(best.inverse.iter().map(|&v| colors[v] as u8));
    Ok(Labeling {
        certificate: CanonicalCertificate(cert),
        canonical_position: best.position.iter().map(|&p| p as usize).collect(),
        generators: search.generators,
    })
}

pub fn canonical_form(g: &QuartGraph) -> Result<Labeling> {
    canonical_form_colored(g, &vec![0; g.order()])
}

pub fn canonical_certificate(g: &QuartGraph) -> Result<CanonicalCertificate> {
    canonical_form(g).map(|l| l.certificate)
}

/// Certificate of the graph with `root` distinguished.
pub fn rooted_certificate(g: &QuartGraph, root: usize) -> Result<CanonicalCertificate> {
    let colors: Vec<u32> = (0..g.order()).map(|v| u32::from(v != root)).collect();
    canonical_form_colored(g, &colors).map(|l| l.certificate)
}

pub fn automorphism_generators(g: &QuartGraph) -> Result<Vec<Vec<usize>>> {
    canonical_form(g).map(|l| l.generators)
}

pub fn is_vertex_transitive(g: &QuartGraph) -> Result<bool> {
    let gens = automorphism_generators(g)?;
    Ok(orbits(g.order(), &gens).iter().all(|&o| o == 0))
}

pub fn is_automorphism(g: &QuartGraph, perm: &[usize]) -> bool {
    perm.len() == g.order() && g.edges().all(|(u, v)| g.has_edge(perm[u], perm[v]))
}
