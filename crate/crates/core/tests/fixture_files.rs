use std::fs;
use std::path::PathBuf;
use std::sync::Arc;

use posetkit::formats::{parse, parse_poset, FamilyFile, SpecFile};
use posetkit::{fixtures, GenerationRadius, DEFAULT_SIZE_GUARD as G};

fn read(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name);
    fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn shipped_posets_match_builtins() {
    for name in [
        "antichain3", "vee5", "hmgap4", "m3", "n5", "lmd6", "chain_3", "chain_5", "boolean_2",
        "boolean_3",
    ] {
        let parsed = parse_poset(&read(&format!("{name}.json"))).unwrap();
        assert_eq!(parsed, fixtures::by_name(name).unwrap(), "{name}");
    }
}

#[test]
fn shipped_spec_and_family() {
    let v = Arc::new(parse_poset(&read("vee5.json")).unwrap());
    let spec = parse::<SpecFile>(&read("vee5.spec.json")).unwrap().to_spec(v.clone()).unwrap();
    assert_eq!(spec.radius(), 3);
    assert_eq!(spec.ideals(G).unwrap().minimal_radius(G).unwrap(), GenerationRadius::Radius(3));

    let a = Arc::new(parse_poset(&read("antichain3.json")).unwrap());
    let fam = parse::<FamilyFile>(&read("antichain3.ungenerated.family.json"))
        .unwrap()
        .to_family(a)
        .unwrap();
    assert_eq!(fam.minimal_radius(G).unwrap(), GenerationRadius::NotGenerated);
}
