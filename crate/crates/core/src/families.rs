//! Named graph families used by the harness and the generator subcommand.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    Path {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    Complete {
        n: usize,
    },
    Edgeless {
        n: usize,
    },
    /// q disjoint triangles.
    QTriangles {
        q: usize,
    },
    /// K_{α,…,α} with `parts` parts of size `part_size`.
    CompleteMultipartite {
        part_size: usize,
        parts: usize,
    },
    /// Uniform labeled tree from a random Prüfer sequence.
    RandomTree {
        n: usize,
        seed: u64,
    },
    /// Erdős–Rényi G(n, p).
    RandomGnp {
        n: usize,
        p: f64,
        seed: u64,
    },
}

pub const FAMILY_KINDS: &[&str] = &[
    "path",
    "cycle",
    "complete",
    "edgeless",
    "q_triangles",
    "complete_multipartite",
    "random_tree",
    "random_gnp",
];

impl FamilySpec {
    /// Builds a spec from a kind name and `key=value` parameters.
    ///
    /// Keys: `n`, `q`, `alpha` (part size), `parts`, `p`, `seed`.
    pub fn parse(kind: &str, params: &BTreeMap<String, String>) -> Result<Self> {
        let get = |key: &str| -> Result<&str> {
            params
                .get(key)
                .map(String::as_str)
                .ok_or_else(|| Error::InvalidParameter(format!("{kind} requires `{key}`")))
        };
        let int = |key: &str| -> Result<u64> {
            let raw = get(key)?;
            raw.parse().map_err(|_| {
                Error::InvalidParameter(format!("`{key}={raw}` is not a non-negative integer"))
            })
        };
        let size = |key: &str| int(key).map(|v| v as usize);
        let allowed: &[&str] = match kind {
            "path" | "cycle" | "complete" | "edgeless" => &["n"],
            "q_triangles" => &["q"],
            "complete_multipartite" => &["alpha", "parts"],
            "random_tree" => &["n", "seed"],
            "random_gnp" => &["n", "p", "seed"],
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "unknown family `{kind}` (expected one of {})",
                    FAMILY_KINDS.join(", ")
                )))
            }
        };
        if let Some(extra) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(Error::InvalidParameter(format!(
                "{kind} does not take `{extra}`"
            )));
        }
        let spec = match kind {
            "path" => FamilySpec::Path { n: size("n")? },
            "cycle" => FamilySpec::Cycle { n: size("n")? },
            "complete" => FamilySpec::Complete { n: size("n")? },
            "edgeless" => FamilySpec::Edgeless { n: size("n")? },
            "q_triangles" => FamilySpec::QTriangles { q: size("q")? },
            "complete_multipartite" => FamilySpec::CompleteMultipartite {
                part_size: size("alpha")?,
                parts: size("parts")?,
            },
            "random_tree" => FamilySpec::RandomTree {
                n: size("n")?,
                seed: int("seed")?,
            },
            _ => {
                let raw = get("p")?;
                let p = raw
                    .parse()
                    .map_err(|_| Error::InvalidParameter(format!("`p={raw}` is not a number")))?;
                FamilySpec::RandomGnp {
                    n: size("n")?,
                    p,
                    seed: int("seed")?,
                }
            }
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn vertex_count(&self) -> usize {
        match *self {
            FamilySpec::Path { n }
            | FamilySpec::Cycle { n }
            | FamilySpec::Complete { n }
            | FamilySpec::Edgeless { n }
            | FamilySpec::RandomTree { n, .. }
            | FamilySpec::RandomGnp { n, .. } => n,
            FamilySpec::QTriangles { q } => q.saturating_mul(3),
            FamilySpec::CompleteMultipartite { part_size, parts } => {
                part_size.saturating_mul(parts)
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.vertex_count();
        if n > MAX_VERTICES {
            return Err(Error::Capacity {
                what: "family vertex count",
                got: n,
                cap: MAX_VERTICES,
            });
        }
        match *self {
            FamilySpec::Cycle { n } if n < 3 => Err(Error::InvalidParameter(format!(
                "cycle needs n >= 3, got {n}"
            ))),
            FamilySpec::RandomGnp { p, .. } if !(0.0..=1.0).contains(&p) => Err(
                Error::InvalidParameter(format!("edge probability {p} outside [0, 1]")),
            ),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Path { n } => write!(f, "path(n={n})"),
            FamilySpec::Cycle { n } => write!(f, "cycle(n={n})"),
            FamilySpec::Complete { n } => write!(f, "complete(n={n})"),
            FamilySpec::Edgeless { n } => write!(f, "edgeless(n={n})"),
            FamilySpec::QTriangles { q } => write!(f, "q_triangles(q={q})"),
            FamilySpec::CompleteMultipartite { part_size, parts } => {
                write!(f, "complete_multipartite(alpha={part_size},parts={parts})")
            }
            FamilySpec::RandomTree { n, seed } => write!(f, "random_tree(n={n},seed={seed})"),
            FamilySpec::RandomGnp { n, p, seed } => {
                write!(f, "random_gnp(n={n},p={p},seed={seed})")
            }
        }
    }
}

pub fn generate(spec: &FamilySpec) -> Result<Graph> {
    spec.validate()?;
    let n = spec.vertex_count();
    let mut edges = Vec::new();
    match *spec {
        FamilySpec::Path { n } => edges.extend((1..n).map(|i| (i - 1, i))),
        FamilySpec::Cycle { n } => edges.extend((0..n).map(|i| (i, (i + 1) % n))),
        FamilySpec::Complete { n } => {
            edges.extend((0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
        }
        FamilySpec::Edgeless { .. } => {}
        FamilySpec::QTriangles { q } => {
            for t in 0..q {
                let b = 3 * t;
                edges.extend([(b, b + 1), (b, b + 2), (b + 1, b + 2)]);
            }
        }
        FamilySpec::CompleteMultipartite { part_size, .. } => {
            for u in 0..n {
                for v in u + 1..n {
                    if u / part_size != v / part_size {
                        edges.push((u, v));
                    }
                }
            }
        }
        FamilySpec::RandomTree { n, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let code: Vec<usize> = (0..n.saturating_sub(2))
                .map(|_| rng.gen_range(0..n))
                .collect();
            edges = prufer_decode(n, &code);
        }
        FamilySpec::RandomGnp { n, p, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for v in 1..n {
                for u in 0..v {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
        }
    }
    Graph::from_edge_list(n, &edges)
}

/// Decodes a Prüfer sequence of length `n − 2` into the edges of a labeled
/// tree on `n` vertices. `n = 1` yields no edges and `n = 2` a single edge.
pub fn prufer_decode(n: usize, code: &[usize]) -> Vec<(usize, usize)> {
    if n < 2 {
        return Vec::new();
    }
    debug_assert_eq!(code.len(), n - 2);
    let mut degree = vec![1usize; n];
    for &c in code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &c in code {
        let leaf = (0..n)
            .find(|&v| degree[v] == 1)
            .expect("a leaf always exists");
        edges.push((leaf, c));
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}
