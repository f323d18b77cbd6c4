//! Compiled-in root data for the standard examples, each paired with its
//! default minuscule cocharacter.
//!
//! Available names: `gl2`, `gl3`, `gl4`, `gsp4`, `gsp6`, `res_gl2_inert_g2`,
//! `res_gl2_inert_g3`, `u3_quasisplit`. The restriction-of-scalars presets
//! also answer to `hilbert_g2` / `hilbert_g3`.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::root_datum::{BasedRootDatum, Cocharacter};

/// Canonical preset names, in catalog order.
pub const PRESET_NAMES: [&str; 8] = [
    "gl2",
    "gl3",
    "gl4",
    "gsp4",
    "gsp6",
    "res_gl2_inert_g2",
    "res_gl2_inert_g3",
    "u3_quasisplit",
];

/// Look up a preset by name (aliases `hilbert_g2`/`hilbert_g3` accepted);
/// returns the datum together with its default cocharacter.
pub fn preset(name: &str) -> Option<(BasedRootDatum, Cocharacter)> {
    match name {
        "gl2" => Some(gl(2)),
        "gl3" => Some(gl(3)),
        "gl4" => Some(gl(4)),
        "gsp4" => Some(gsp4()),
        "gsp6" => Some(gsp6()),
        "res_gl2_inert_g2" | "hilbert_g2" => Some(res_gl2_inert(2)),
        "res_gl2_inert_g3" | "hilbert_g3" => Some(res_gl2_inert(3)),
        "u3_quasisplit" => Some(u3_quasisplit()),
        _ => None,
    }
}

fn identity_rows(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| {
            let mut row = vec![0i64; n];
            row[i] = 1;
            row
        })
        .collect()
}

/// GL_n in the diagonal-torus coordinates: simple (co)roots `e_i − e_{i+1}`,
/// split (σ = 1), cocharacter `e_1`.
fn gl(n: usize) -> (BasedRootDatum, Cocharacter) {
    let mut roots = Vec::new();
    for i in 0..n - 1 {
        let mut a = vec![0i64; n];
        a[i] = 1;
        a[i + 1] = -1;
        roots.push(a);
    }
    let coroots = roots.clone();
    let datum = BasedRootDatum::new(
        n,
        roots,
        coroots,
        identity_rows(n),
        Some(alloc::format!("gl{n}")),
    )
    .expect("builtin preset");
    let mut mu = vec![0i64; n];
    mu[0] = 1;
    (datum, mu)
}

/// GSp_4 with the similitude line as the third coordinate: characters of the
/// torus diag(t₁, t₂, c/t₂, c/t₁) are written in the basis (t₁, t₂, c).
fn gsp4() -> (BasedRootDatum, Cocharacter) {
    let roots = vec![vec![1, -1, 0], vec![0, 2, -1]];
    let coroots = vec![vec![1, -1, 0], vec![0, 1, 0]];
    let datum = BasedRootDatum::new(3, roots, coroots, identity_rows(3), Some("gsp4".to_string()))
        .expect("builtin preset");
    (datum, vec![1, 1, 1])
}

/// GSp_6, same convention with the similitude line as the fourth coordinate.
fn gsp6() -> (BasedRootDatum, Cocharacter) {
    let roots = vec![vec![1, -1, 0, 0], vec![0, 1, -1, 0], vec![0, 0, 2, -1]];
    let coroots = vec![vec![1, -1, 0, 0], vec![0, 1, -1, 0], vec![0, 0, 1, 0]];
    let datum = BasedRootDatum::new(4, roots, coroots, identity_rows(4), Some("gsp6".to_string()))
        .expect("builtin preset");
    (datum, vec![1, 1, 1, 1])
}

/// Restriction of scalars of GL_2 along an unramified degree-`g` extension:
/// `g` GL_2 blocks with σ cycling the blocks, cocharacter (1,0) per block.
fn res_gl2_inert(g: usize) -> (BasedRootDatum, Cocharacter) {
    let rank = 2 * g;
    let mut roots = Vec::new();
    for b in 0..g {
        let mut a = vec![0i64; rank];
        a[2 * b] = 1;
        a[2 * b + 1] = -1;
        roots.push(a);
    }
    let coroots = roots.clone();
    let mut sigma = vec![vec![0i64; rank]; rank];
    for b in 0..g {
        let target = (b + 1) % g;
        sigma[2 * target][2 * b] = 1;
        sigma[2 * target + 1][2 * b + 1] = 1;
    }
    let datum = BasedRootDatum::new(
        rank,
        roots,
        coroots,
        sigma,
        Some(alloc::format!("res_gl2_inert_g{g}")),
    )
    .expect("builtin preset");
    let mut mu = vec![0i64; rank];
    for b in 0..g {
        mu[2 * b] = 1;
    }
    (datum, mu)
}

/// Quasi-split unitary group in three variables, inert case: GL_3 root data
/// with σ(y₁,y₂,y₃) = (−y₃,−y₂,−y₁), cocharacter (1,0,0).
fn u3_quasisplit() -> (BasedRootDatum, Cocharacter) {
    let roots = vec![vec![1, -1, 0], vec![0, 1, -1]];
    let coroots = roots.clone();
    let sigma = vec![vec![0, 0, -1], vec![0, -1, 0], vec![-1, 0, 0]];
    let datum = BasedRootDatum::new(3, roots, coroots, sigma, Some("u3_quasisplit".to_string()))
        .expect("builtin preset");
    (datum, vec![1, 0, 0])
}
