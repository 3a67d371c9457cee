use super::group::PermGroup;
use super::perm::Perm;

fn gen(gens: &[&str], n: usize) -> PermGroup {
    let gens: Vec<Perm> = gens.iter().map(|s| Perm::parse(s, n).expect("literal")).collect();
    PermGroup::generate(&gens, n).expect("small group")
}

pub fn symmetric_group(n: usize) -> PermGroup {
    if n <= 1 {
        return PermGroup::trivial(n);
    }
    let cycle: Vec<usize> = (2..=n).chain([1]).collect();
    let gens = [
        Perm::from_images(&cycle).unwrap(),
        Perm::from_cycles(&[&[1, 2]], n).unwrap(),
    ];
    PermGroup::generate(&gens, n).expect("symmetric group within cap")
}

/// Cyclic group generated by the `n`-cycle `(1 2 … n)`.
pub fn cyclic_group(n: usize) -> PermGroup {
    if n <= 1 {
        return PermGroup::trivial(n);
    }
    let cycle: Vec<usize> = (2..=n).chain([1]).collect();
    PermGroup::generate(&[Perm::from_images(&cycle).unwrap()], n).unwrap()
}

/// `S₃ × S₃` acting on `{1,2,3} ⊔ {4,5,6}`.
pub fn s3_times_s3() -> PermGroup {
    gen(&["(1 2 3)", "(1 2)", "(4 5 6)", "(4 5)"], 6)
}

pub const SYLOW2_S8_GENERATORS: [&str; 5] =
    ["(1 2 3 4)", "(1 3)", "(5 6 7 8)", "(5 7)", "(1 5)(2 6)(3 7)(4 8)"];

/// The wreath product `D₄ ≀ C₂` inside `S₈`, a Sylow 2-subgroup.
pub fn sylow2_s8_witness() -> PermGroup {
    gen(&SYLOW2_S8_GENERATORS, 8)
}

/// `AGL(1, 𝔽₁₇)` acting on 𝔽₁₇, where the point `k+1` stands for residue `k`.
/// Generated by `x ↦ x + 1` and `x ↦ 3x` (3 is a primitive root mod 17).
pub fn agl_1_17() -> PermGroup {
    let [t, m] = agl_1_17_generators();
    PermGroup::generate(&[t, m], 17).unwrap()
}

pub fn agl_1_17_generators() -> [Perm; 2] {
    let shift: Vec<usize> = (0..17).map(|k| (k + 1) % 17 + 1).collect();
    let scale: Vec<usize> = (0..17).map(|k| (3 * k) % 17 + 1).collect();
    [
        Perm::from_images(&shift).unwrap(),
        Perm::from_images(&scale).unwrap(),
    ]
}

/// Right-regular action of `g` on its own elements: `h ↦ h·x` for each
/// generator `x`. Returns `None` when `|g|` exceeds the supported degree.
pub fn regular_action_generators(g: &PermGroup) -> Option<Vec<Vec<usize>>> {
    let elems = g.elements();
    let images = g
        .generators()
        .iter()
        .map(|x| {
            elems
                .iter()
                .map(|h| g.position(&h.then(x)).expect("closed") + 1)
                .collect()
        })
        .collect();
    Some(images)
}
