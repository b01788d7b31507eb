//! Shared builders for the small standard instances used across the unit
//! tests: the integer line, the single point, the barycentrically
//! subdivided triangle, and the cyclic pull-back of the line.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::complex::{Assertions, ComplexSpec, FaceRecord};
use crate::group::{cyclic_rewriting, GroupDescriptor};

pub fn all_true() -> Assertions {
    Assertions { contractible: true, finite_stabilizers: true, inversion_free: true }
}

/// Line triangulation of the reals with the integers acting by translation:
/// one vertex orbit, one edge orbit, edge faces (t=0, g=t) and (t=1, g=e).
pub fn z_line_spec() -> ComplexSpec {
    let group = Arc::new(
        GroupDescriptor::free(vec!["t".into()])
            .unwrap()
            .with_quotient("z3", vec![vec![1, 2, 0]])
            .unwrap(),
    );
    let mut faces = BTreeMap::new();
    faces.insert(
        "E".to_string(),
        vec![
            FaceRecord { t: 0, word: vec![1], target: "v".into() },
            FaceRecord { t: 1, word: vec![], target: "v".into() },
        ],
    );
    ComplexSpec {
        group,
        top_degree: 0,
        orbits: vec![vec!["v".into()], vec!["E".into()]],
        faces,
        assertions: all_true(),
    }
}

pub fn point_spec() -> ComplexSpec {
    ComplexSpec {
        group: Arc::new(GroupDescriptor::free(vec!["t".into()]).unwrap()),
        top_degree: 0,
        orbits: vec![vec!["pt".into()], vec![]],
        faces: BTreeMap::new(),
        assertions: all_true(),
    }
}

/// Barycentric subdivision of the triangle with S3 permuting the vertices;
/// all representatives are standard flag chains, so every face word is the
/// identity. Orbit counts are (3, 3, 1).
pub fn s3_triangle_spec() -> ComplexSpec {
    let group = Arc::new(
        GroupDescriptor::finite_permutation(
            vec!["s".into(), "r".into()],
            vec![vec![1, 0, 2], vec![1, 2, 0]],
        )
        .unwrap(),
    );
    let mut faces = BTreeMap::new();
    faces.insert(
        "e01".to_string(),
        vec![
            FaceRecord { t: 0, word: vec![], target: "v1".into() },
            FaceRecord { t: 1, word: vec![], target: "v0".into() },
        ],
    );
    faces.insert(
        "e02".to_string(),
        vec![
            FaceRecord { t: 0, word: vec![], target: "v2".into() },
            FaceRecord { t: 1, word: vec![], target: "v0".into() },
        ],
    );
    faces.insert(
        "e12".to_string(),
        vec![
            FaceRecord { t: 0, word: vec![], target: "v2".into() },
            FaceRecord { t: 1, word: vec![], target: "v1".into() },
        ],
    );
    faces.insert(
        "T".to_string(),
        vec![
            FaceRecord { t: 0, word: vec![], target: "e12".into() },
            FaceRecord { t: 1, word: vec![], target: "e02".into() },
            FaceRecord { t: 2, word: vec![], target: "e01".into() },
        ],
    );
    ComplexSpec {
        group,
        top_degree: 1,
        orbits: vec![
            vec!["v0".into(), "v1".into(), "v2".into()],
            vec!["e01".into(), "e02".into(), "e12".into()],
            vec!["T".into()],
        ],
        faces,
        assertions: all_true(),
    }
}

/// Pull-back of the integer-line complex along Z -> Z/3.
pub fn z3_cycle_spec() -> ComplexSpec {
    let group = Arc::new(cyclic_rewriting(3).unwrap());
    let mut faces = BTreeMap::new();
    faces.insert(
        "E".to_string(),
        vec![
            FaceRecord { t: 0, word: vec![1], target: "v".into() },
            FaceRecord { t: 1, word: vec![], target: "v".into() },
        ],
    );
    ComplexSpec {
        group,
        top_degree: 0,
        orbits: vec![vec!["v".into()], vec!["E".into()]],
        faces,
        assertions: Assertions {
            contractible: false,
            finite_stabilizers: true,
            inversion_free: true,
        },
    }
}
