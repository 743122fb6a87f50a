use std::fs;
use std::path::Path;
use std::sync::Arc;

use posetkit::formats::{parse, parse_poset, FamilyFile, RepresentationFile, SpecFile};
use posetkit::{fixtures, ClosureFamily, JoinSpec, Poset};

use crate::{CliError, CliResult};

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn located(path: &Path, e: posetkit::Error) -> CliError {
    CliError::Input(format!("{}: {e}", path.display()))
}

/// A poset JSON file, or failing that a built-in fixture name such as
/// `vee5` or `chain_3`.
pub fn load_poset(arg: &str) -> CliResult<Arc<Poset>> {
    let path = Path::new(arg);
    if path.exists() {
        let text = read(path)?;
        return parse_poset(&text).map(Arc::new).map_err(|e| located(path, e));
    }
    fixtures::by_name(arg)
        .map(Arc::new)
        .ok_or_else(|| CliError::Input(format!("`{arg}` is neither a file nor a known fixture")))
}

pub fn load_spec(path: &Path, poset: Arc<Poset>) -> CliResult<JoinSpec> {
    let text = read(path)?;
    parse::<SpecFile>(&text)
        .and_then(|f| f.to_spec(poset))
        .map_err(|e| located(path, e))
}

pub fn load_family(path: &Path, poset: Arc<Poset>) -> CliResult<ClosureFamily> {
    let text = read(path)?;
    parse::<FamilyFile>(&text)
        .and_then(|f| f.to_family(poset))
        .map_err(|e| located(path, e))
}

pub fn load_representation(path: &Path, poset: &Poset) -> CliResult<posetkit::Representation> {
    let text = read(path)?;
    parse::<RepresentationFile>(&text)
        .and_then(|f| f.to_representation(poset))
        .map_err(|e| located(path, e))
}
