//! Fixed benchmark inputs shared by the criterion benches.

use indpoly::{generate, FamilySpec, Graph};

/// Named graphs spanning sparse, dense and structured cases.
pub fn fixtures() -> Vec<(&'static str, Graph)> {
    [
        ("path_60", FamilySpec::Path { n: 60 }),
        ("cycle_40", FamilySpec::Cycle { n: 40 }),
        ("q_triangles_12", FamilySpec::QTriangles { q: 12 }),
        (
            "multipartite_4x6",
            FamilySpec::CompleteMultipartite {
                part_size: 4,
                parts: 6,
            },
        ),
        (
            "gnp_30_0.2",
            FamilySpec::RandomGnp {
                n: 30,
                p: 0.2,
                seed: 11,
            },
        ),
        (
            "gnp_24_0.5",
            FamilySpec::RandomGnp {
                n: 24,
                p: 0.5,
                seed: 12,
            },
        ),
        ("tree_64", FamilySpec::RandomTree { n: 64, seed: 13 }),
    ]
    .into_iter()
    .map(|(name, spec)| (name, generate(&spec).expect("fixture parameters are valid")))
    .collect()
}
