//! Scenario files: one TOML document fixes the group, the acting group
//! and its action, the ambient conductor, the cyclotomic tower, the
//! place system, sweep sizes and flags. Parsing and invariant
//! validation are separated so the driver can distinguish exit codes.

use galmod::abelian::{FinAbGroup, SigmaAction};
use galmod::cohomology::FiniteTameModel;
use galmod::finite_group::FiniteGroup;
use galmod::ideles::{FiberSpec, PlaceSystem};
use galmod::resolvend::GaloisModel;
use serde::Deserialize;
use std::path::Path;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub name: String,
    pub version: u32,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default)]
    pub suites: Vec<String>,
    pub group: GroupSection,
    pub sigma: SigmaSection,
    pub cyclo: CycloSection,
    pub tower: TowerSection,
    #[serde(default)]
    pub stickelberger: StickSection,
    #[serde(default)]
    pub local: LocalSection,
    #[serde(default)]
    pub resolvend: ResolvendSection,
    #[serde(default)]
    pub ideles: IdelesSection,
    #[serde(default)]
    pub places: Vec<PlaceSection>,
    #[serde(default)]
    pub flags: FlagsSection,
    #[serde(default)]
    pub bounds: BoundsSection,
}

fn default_seed() -> u64 {
    1
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSection {
    #[serde(rename = "G")]
    pub g: Vec<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SigmaSection {
    pub name: Option<String>,
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default = "default_action")]
    pub action: String,
    /// elements acting by inversion when action = "inversion"
    #[serde(default)]
    pub inverting: Vec<usize>,
}

fn default_action() -> String {
    "trivial".into()
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CycloSection {
    pub conductor: u64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerSection {
    pub gamma_tilde: Vec<u64>,
    pub omega: Vec<u64>,
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct StickSection {
    #[serde(default = "default_sweep_groups")]
    pub groups: Vec<Vec<u64>>,
    #[serde(default = "default_psi")]
    pub psi_samples: usize,
    #[serde(default = "default_bound20")]
    pub coeff_bound: i64,
}

fn default_sweep_groups() -> Vec<Vec<u64>> {
    vec![vec![2], vec![3], vec![4], vec![2, 2]]
}

fn default_psi() -> usize {
    50
}

fn default_bound20() -> i64 {
    20
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct LocalSection {
    #[serde(default = "default_residues")]
    pub residue_sizes: Vec<u64>,
}

fn default_residues() -> Vec<u64> {
    vec![3, 4, 5, 7, 9, 13]
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct ResolvendSection {
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default = "default_search")]
    pub search_bound: usize,
}

fn default_samples() -> usize {
    40
}

fn default_search() -> usize {
    4
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct IdelesSection {
    pub ramified_place: Option<usize>,
    pub second_ramified_place: Option<usize>,
    #[serde(default = "default_sweep")]
    pub sweep: usize,
    #[serde(default = "default_modulus")]
    pub modulus: u64,
}

fn default_sweep() -> usize {
    25
}

fn default_modulus() -> u64 {
    8
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaceSection {
    pub label: String,
    pub q: u64,
    #[serde(default)]
    pub ramified: bool,
    #[serde(default = "default_degree")]
    pub residue_degree: u32,
    pub gammas: Vec<usize>,
    pub decomposition: Vec<usize>,
}

fn default_degree() -> u32 {
    1
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct FlagsSection {
    #[serde(default)]
    pub roots_of_unity_in_k: bool,
    #[serde(default)]
    pub trivial_sigma_action: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsSection {
    #[serde(default = "default_h2")]
    pub h2_enumeration: u64,
}

impl Default for BoundsSection {
    fn default() -> Self {
        BoundsSection {
            h2_enumeration: default_h2(),
        }
    }
}

fn default_h2() -> u64 {
    4_000_000
}

/// Loading failures keep the parse/invariant distinction for the exit
/// codes of the driver.
#[derive(Debug)]
pub enum LoadError {
    Io(String),
    Parse(String),
    Invariant(String),
}

impl std::fmt::Display for LoadError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LoadError::Io(m) => write!(f, "io error: {m}"),
            LoadError::Parse(m) => write!(f, "parse error: {m}"),
            LoadError::Invariant(m) => write!(f, "invariant violation: {m}"),
        }
    }
}

/// Fully validated scenario with all domain objects constructed.
pub struct Scenario {
    pub file: ScenarioFile,
    pub group: FinAbGroup,
    pub sigma: FiniteGroup,
    pub action: SigmaAction,
    pub tower: FiniteTameModel,
    pub omega_model: GaloisModel,
    pub system: PlaceSystem,
}

pub const ALL_SUITES: &[&str] = &[
    "basic-diagram",
    "cohomology",
    "ideles",
    "local",
    "resolvend",
    "stickelberger",
];

pub fn load(path: &Path) -> Result<Scenario, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|e| LoadError::Io(e.to_string()))?;
    let file: ScenarioFile = toml::from_str(&text).map_err(|e| LoadError::Parse(e.to_string()))?;
    validate(file)
}

pub fn validate(file: ScenarioFile) -> Result<Scenario, LoadError> {
    let inv = |m: String| LoadError::Invariant(m);
    let group = FinAbGroup::new(&file.group.g)
        .map_err(|e| inv(format!("group: {e}")))?;
    let n = file.cyclo.conductor;
    if group.exponent() > 1 && n % group.exponent() != 0 {
        return Err(inv(format!(
            "conductor {n} is not divisible by the group exponent {}",
            group.exponent()
        )));
    }
    let sigma = match (&file.sigma.name, &file.sigma.table) {
        (Some(name), None) => {
            FiniteGroup::named(name).map_err(|e| inv(format!("sigma: {e}")))?
        }
        (None, Some(table)) => {
            FiniteGroup::from_table(table.clone()).map_err(|e| inv(format!("sigma: {e}")))?
        }
        _ => return Err(inv("sigma needs exactly one of name or table".into())),
    };
    let action = match file.sigma.action.as_str() {
        "trivial" => SigmaAction::trivial(sigma.clone(), group.clone()),
        "inversion" => SigmaAction::by_inversion(sigma.clone(), group.clone(), &file.sigma.inverting)
            .map_err(|e| inv(format!("action: {e}")))?,
        other => return Err(inv(format!("unknown action {other:?}"))),
    };
    if file.flags.trivial_sigma_action && !action.is_trivial() {
        return Err(inv(
            "trivial_sigma_action flag set but the action is nontrivial".into(),
        ));
    }
    let tower = FiniteTameModel::cyclotomic(n, &file.tower.gamma_tilde, &file.tower.omega)
        .map_err(|e| inv(format!("tower: {e}")))?;
    if !action.is_trivial() && tower.sigma() != &sigma {
        return Err(inv(
            "a nontrivial action requires the declared sigma to equal the tower quotient".into(),
        ));
    }
    let omega_model = GaloisModel::new(n, &file.tower.omega)
        .map_err(|e| inv(format!("tower: {e}")))?;
    let specs: Vec<FiberSpec> = file
        .places
        .iter()
        .map(|p| FiberSpec {
            label: p.label.clone(),
            q: p.q,
            ramified: p.ramified,
            residue_degree: p.residue_degree,
            gammas: p.gammas.clone(),
            decomposition: p.decomposition.clone(),
        })
        .collect();
    let system = PlaceSystem::new(tower.clone(), group.clone(), &specs)
        .map_err(|e| inv(format!("places: {e}")))?;
    if file.flags.roots_of_unity_in_k && !system.roots_of_unity_flag_consistent() {
        return Err(inv(
            "roots_of_unity_in_k flag set but a residue size is not 1 modulo exp(G)".into(),
        ));
    }
    for s in &file.suites {
        if !ALL_SUITES.contains(&s.as_str()) {
            return Err(inv(format!("unknown suite {s:?}")));
        }
    }
    if let Some(r) = file.ideles.ramified_place {
        if r >= system.ext_places().len() || !system.ext_places()[r].ramified {
            return Err(inv(format!("ideles.ramified_place {r} is not a ramified place")));
        }
    }
    if let Some(r) = file.ideles.second_ramified_place {
        if r >= system.ext_places().len() || !system.ext_places()[r].ramified {
            return Err(inv(format!(
                "ideles.second_ramified_place {r} is not a ramified place"
            )));
        }
    }
    Ok(Scenario {
        file,
        group,
        sigma,
        action,
        tower,
        omega_model,
        system,
    })
}
