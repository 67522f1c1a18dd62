fn main() {
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");

    #[cfg(feature = "gen-header")]
    {
        let crate_dir = std::env::var("CARGO_MANIFEST_DIR").expect("manifest dir");
        let bindings = cbindgen::generate(&crate_dir).expect("cbindgen generation");
        bindings.write_to_file(format!("{crate_dir}/include/apcw.h"));
    }
}
