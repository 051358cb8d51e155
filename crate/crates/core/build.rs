//! Compiles every catalog fixture (`catalog/<slot>/<variant>.txt`) into the
//! library as its own module, so variants can be bound in-process and any
//! fixture that does not type-check against the solver breaks the build.

use std::env;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

const SLOTS: [&str; 9] = [
    "restart",
    "restart_condition",
    "restart_condition_update",
    "reduce",
    "reduce_condition",
    "rephase",
    "rephase_condition",
    "bump_var",
    "bump_var_heuristic",
];

fn main() {
    let manifest = PathBuf::from(env::var("CARGO_MANIFEST_DIR").unwrap());
    let catalog = manifest.join("catalog");
    println!("cargo:rerun-if-changed={}", catalog.display());

    let mut modules = String::new();
    let mut table = String::from("pub(crate) static EMBEDDED: &[EmbeddedVariant] = &[\n");
    let mut n = 0;
    for slot in SLOTS {
        let dir = catalog.join(slot);
        println!("cargo:rerun-if-changed={}", dir.display());
        let mut files: Vec<PathBuf> = match fs::read_dir(&dir) {
            Ok(rd) => rd
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "txt"))
                .collect(),
            Err(_) => Vec::new(),
        };
        files.sort();
        for file in files {
            println!("cargo:rerun-if-changed={}", file.display());
            let name = file.file_stem().unwrap().to_string_lossy().into_owned();
            let path = escaped(&file);
            writeln!(
                modules,
                "pub(crate) mod v{n} {{\n    #[allow(unused_imports)]\n    use crate::solver::template::*;\n    include!(\"{path}\");\n    pub(crate) fn bind(h: &mut HeuristicHooks) {{\n        h.{slot} = {slot};\n    }}\n}}"
            )
            .unwrap();
            writeln!(
                table,
                "    EmbeddedVariant {{ slot: \"{slot}\", name: \"{name}\", body: include_str!(\"{path}\"), bind: v{n}::bind }},"
            )
            .unwrap();
            n += 1;
        }
    }
    table.push_str("];\n");

    let out = PathBuf::from(env::var("OUT_DIR").unwrap()).join("catalog_gen.rs");
    fs::write(out, format!("{modules}\n{table}")).unwrap();
}

fn escaped(p: &Path) -> String {
    p.display().to_string().replace('\\', "\\\\").replace('"', "\\\"")
}
