//! Inputs shipped inside the binary, addressed on the command line as `@name`.

pub const ENTRIES: &[(&str, &str)] = &[
    ("polynomial_z2", include_str!("../../data/polynomial_z2.toml")),
    ("polynomial_z2_twisted", include_str!("../../data/polynomial_z2_twisted.toml")),
    ("rank2_deformed_linked", include_str!("../../data/rank2_deformed_linked.toml")),
    ("rank2_unlinked", include_str!("../../data/rank2_unlinked.toml")),
    ("sl2_affine2", include_str!("../../data/sl2_affine2.toml")),
    ("sl2_affine2_crossed", include_str!("../../data/sl2_affine2_crossed.toml")),
    ("sl2_quantum_plane", include_str!("../../data/sl2_quantum_plane.toml")),
    ("sl3_affine3", include_str!("../../data/sl3_affine3.toml")),
    ("sl3_double", include_str!("../../data/sl3_double.toml")),
    ("sl3_double_generic_cocycle", include_str!("../../data/sl3_double_generic_cocycle.toml")),
    ("sl4_affine4", include_str!("../../data/sl4_affine4.toml")),
];

pub fn get(name: &str) -> Option<&'static str> {
    ENTRIES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}
