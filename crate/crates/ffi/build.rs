//! Generates the C header for the FFI surface into `include/`.

fn main() {
    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").expect("set by cargo");
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
    cbindgen::generate(&crate_dir)
        .expect("header generation failed")
        .write_to_file(format!("{crate_dir}/include/dihedral_griess.h"));
}
