//! Small groups with named elements.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::perm::{from_permutations, Perm};
use super::FiniteGroup;

pub const BUNDLED: [&str; 6] = ["S3", "S4", "A4", "D4", "Q8", "C2xC2"];

/// Looks a bundled group up by name (case-insensitive; `V4` and `K4` alias `C2xC2`).
pub fn bundled(name: &str) -> Option<FiniteGroup> {
    let perms = |degree: usize, gens: &[&str]| {
        let gens: Vec<Perm> = gens.iter().map(|g| Perm::parse(g, degree).expect("bundled cycle")).collect();
        from_permutations(degree, &gens).expect("bundled group")
    };
    Some(match name.to_ascii_uppercase().as_str() {
        "S3" => perms(3, &["(1 2)", "(1 2 3)"]),
        "S4" => perms(4, &["(1 2)", "(1 2 3 4)"]),
        "A4" => perms(4, &["(1 2 3)", "(1 2)(3 4)"]),
        "D4" => perms(4, &["(1 2 3 4)", "(1 3)"]),
        "C2XC2" | "V4" | "K4" => perms(4, &["(1 2)(3 4)", "(1 3)(2 4)"]),
        "Q8" => quaternions(),
        _ => return None,
    })
}

// Elements are ±u for u in {1, i, j, k}, stored as 2u + (sign bit).
fn quaternions() -> FiniteGroup {
    const UNITS: [&str; 4] = ["1", "i", "j", "k"];
    // unit products: (sign, unit) of UNITS[a] * UNITS[b]
    const PROD: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let table = (0..8)
        .map(|a| {
            (0..8)
                .map(|b| {
                    let (neg, u) = PROD[a / 2][b / 2];
                    let sign = (a % 2 == 1) ^ (b % 2 == 1) ^ neg;
                    (2 * u + usize::from(sign)) as u32
                })
                .collect()
        })
        .collect();
    let names: Vec<String> =
        (0..8).map(|e| if e % 2 == 0 { UNITS[e / 2].to_string() } else { alloc::format!("-{}", UNITS[e / 2]) }).collect();
    FiniteGroup::from_table(table, Some(names)).expect("quaternion table")
}
