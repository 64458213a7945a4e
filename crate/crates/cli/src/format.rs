//! The JSON module and morphism file formats.
//!
//! ```json
//! {
//!   "scheme": "Z2",
//!   "n": 3,
//!   "m": 5,
//!   "components": [{ "degree": [0, 0], "dim": 1 }],
//!   "d0": [{ "from": [0, 0], "matrix": [["1/2 + t^3"]] }],
//!   "d1": []
//! }
//! ```
//!
//! A morphism file holds `source` and `target` modules and a `blocks` list of
//! `{ "degree": [a, b], "matrix": … }` records. Writers emit components and
//! blocks sorted by degree and omit zero blocks, so output is canonical.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use cyclocat_core::arith::{CyclotomicScalar, Matrix};
use cyclocat_core::modules::{Degree, Direction, GradedModule, GradingScheme, ModuleMorphism, SchemeKind};
use serde::{Deserialize, Serialize};

#[derive(Debug)]
pub struct FormatError {
    /// Where in the file the problem is, e.g. `d0 block from (1, 0), row 2`.
    pub location: String,
    pub message: String,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

impl std::error::Error for FormatError {}

fn err(location: impl Into<String>, message: impl fmt::Display) -> FormatError {
    FormatError {
        location: location.into(),
        message: message.to_string(),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub scheme: SchemeName,
    pub n: u64,
    pub m: u64,
    pub components: Vec<Component>,
    #[serde(default)]
    pub d0: Vec<Block>,
    #[serde(default)]
    pub d1: Vec<Block>,
}

#[derive(Serialize, Deserialize, Clone, Copy)]
pub enum SchemeName {
    Z2,
    #[serde(rename = "cyclic")]
    Cyclic,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Component {
    pub degree: [i64; 2],
    pub dim: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Block {
    pub from: [i64; 2],
    pub matrix: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismFile {
    pub source: ModuleFile,
    pub target: ModuleFile,
    pub blocks: Vec<MapBlock>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapBlock {
    pub degree: [i64; 2],
    pub matrix: Vec<Vec<String>>,
}

fn write_matrix(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(CyclotomicScalar::to_string).collect()).collect()
}

fn read_matrix(scheme: &GradingScheme, rows: &[Vec<String>], shape: (usize, usize), location: &str) -> Result<Matrix, FormatError> {
    if rows.len() != shape.0 {
        return Err(err(location, format!("expected {} rows, found {}", shape.0, rows.len())));
    }
    let mut data = Vec::with_capacity(rows.len());
    for (r, row) in rows.iter().enumerate() {
        if row.len() != shape.1 {
            return Err(err(format!("{location}, row {r}"), format!("expected {} entries, found {}", shape.1, row.len())));
        }
        let parsed = row
            .iter()
            .enumerate()
            .map(|(c, s)| CyclotomicScalar::parse(scheme.field(), s).map_err(|e| err(format!("{location}, row {r}, column {c}"), e)))
            .collect::<Result<Vec<_>, _>>()?;
        data.push(parsed);
    }
    Ok(Matrix::from_rows(scheme.field(), data, shape.1))
}

fn degree(d: [i64; 2]) -> Degree {
    (d[0], d[1])
}

pub fn module_to_file(x: &GradedModule) -> ModuleFile {
    let s = x.scheme();
    let blocks = |dir| {
        x.blocks(dir)
            .iter()
            .map(|(&(a, b), m)| Block {
                from: [a, b],
                matrix: write_matrix(m),
            })
            .collect()
    };
    ModuleFile {
        scheme: match s.kind() {
            SchemeKind::Z2 => SchemeName::Z2,
            SchemeKind::Cyclic => SchemeName::Cyclic,
        },
        n: s.n(),
        m: s.m(),
        components: x
            .dims()
            .iter()
            .map(|(&(a, b), &dim)| Component { degree: [a, b], dim })
            .collect(),
        d0: blocks(Direction::D0),
        d1: blocks(Direction::D1),
    }
}

pub fn module_from_file(f: &ModuleFile) -> Result<GradedModule, FormatError> {
    let kind = match f.scheme {
        SchemeName::Z2 => SchemeKind::Z2,
        SchemeName::Cyclic => SchemeKind::Cyclic,
    };
    if f.n < 2 || f.m < 2 {
        return Err(err("header", "n and m must be at least 2"));
    }
    let scheme = GradingScheme::new(kind, f.n, f.m).map_err(|e| err("header", e))?;
    let mut dims = BTreeMap::new();
    for c in &f.components {
        let g = scheme.normalize(degree(c.degree));
        if dims.insert(g, c.dim).is_some() {
            return Err(err(format!("component at ({}, {})", g.0, g.1), "listed twice"));
        }
    }
    let dim_at = |g: Degree| dims.get(&scheme.normalize(g)).copied().unwrap_or(0);
    let mut maps = [BTreeMap::new(), BTreeMap::new()];
    for (k, (dir, list)) in [(Direction::D0, &f.d0), (Direction::D1, &f.d1)].into_iter().enumerate() {
        for b in list {
            let g = scheme.normalize(degree(b.from));
            let location = format!("{dir} block from ({}, {})", g.0, g.1);
            let shape = (dim_at(scheme.advance(g, dir, 1)), dim_at(g));
            let m = read_matrix(&scheme, &b.matrix, shape, &location)?;
            if maps[k].insert(g, m).is_some() {
                return Err(err(location, "listed twice"));
            }
        }
    }
    let [d0, d1] = maps;
    GradedModule::from_blocks(&scheme, dims, d0, d1).map_err(|e| err("module", e))
}

pub fn morphism_to_file(f: &ModuleMorphism) -> MorphismFile {
    MorphismFile {
        source: module_to_file(f.source()),
        target: module_to_file(f.target()),
        blocks: f
            .blocks()
            .iter()
            .filter(|(_, m)| !m.is_zero())
            .map(|(&(a, b), m)| MapBlock {
                degree: [a, b],
                matrix: write_matrix(m),
            })
            .collect(),
    }
}

pub fn morphism_from_file(f: &MorphismFile) -> Result<ModuleMorphism, FormatError> {
    let source = module_from_file(&f.source).map_err(|e| err(format!("source, {}", e.location), e.message))?;
    let target = module_from_file(&f.target).map_err(|e| err(format!("target, {}", e.location), e.message))?;
    let s = source.scheme();
    let mut blocks = BTreeMap::new();
    for b in &f.blocks {
        let g = s.normalize(degree(b.degree));
        let location = format!("map block at ({}, {})", g.0, g.1);
        let m = read_matrix(s, &b.matrix, (target.dim_at(g), source.dim_at(g)), &location)?;
        if blocks.insert(g, m).is_some() {
            return Err(err(location, "listed twice"));
        }
    }
    ModuleMorphism::new(&source, &target, blocks).map_err(|e| err("morphism", e))
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, FormatError> {
    serde_json::from_str(text).map_err(|e| err(format!("line {}, column {}", e.line(), e.column()), e))
}

pub fn module_to_json(x: &GradedModule) -> String {
    let mut s = serde_json::to_string_pretty(&module_to_file(x)).expect("serializable");
    s.push('\n');
    s
}

pub fn module_from_json(text: &str) -> Result<GradedModule, FormatError> {
    module_from_file(&parse_json(text)?)
}

pub fn morphism_to_json(f: &ModuleMorphism) -> String {
    let mut s = serde_json::to_string_pretty(&morphism_to_file(f)).expect("serializable");
    s.push('\n');
    s
}

pub fn morphism_from_json(text: &str) -> Result<ModuleMorphism, FormatError> {
    morphism_from_file(&parse_json(text)?)
}

fn read(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|e| err(path.display().to_string(), e))
}

pub fn read_module(path: &Path) -> Result<GradedModule, FormatError> {
    module_from_json(&read(path)?).map_err(|e| err(format!("{}: {}", path.display(), e.location), e.message))
}

pub fn read_morphism(path: &Path) -> Result<ModuleMorphism, FormatError> {
    morphism_from_json(&read(path)?).map_err(|e| err(format!("{}: {}", path.display(), e.location), e.message))
}

#[cfg(test)]
mod tests {
    use super::*;
    use cyclocat_core::modules::random::{random_module, random_module_in, rng_from_seed, Family};
    use cyclocat_core::stable::random_morphism;

    #[test]
    fn module_round_trip() {
        for s in [GradingScheme::z2(3, 5).unwrap(), GradingScheme::cyclic(3, 5).unwrap()] {
            for seed in 0..5 {
                let x = random_module(&s, 20, seed);
                let text = module_to_json(&x);
                let y = module_from_json(&text).unwrap();
                assert_eq!(x, y);
                assert_eq!(text, module_to_json(&y));
            }
        }
    }

    #[test]
    fn morphism_round_trip() {
        let s = GradingScheme::z2(3, 5).unwrap();
        let mut rng = rng_from_seed(9);
        let x = random_module_in(&s, Family::Any, 10, &mut rng);
        let y = random_module_in(&s, Family::Any, 10, &mut rng);
        let f = random_morphism(&x, &y, &mut rng).unwrap();
        let text = morphism_to_json(&f);
        assert_eq!(morphism_from_json(&text).unwrap(), f);
    }

    #[test]
    fn rejects_invalid_modules() {
        let bad_relation = r#"{"scheme":"Z2","n":3,"m":5,
            "components":[{"degree":[0,0],"dim":1},{"degree":[1,0],"dim":1},{"degree":[2,0],"dim":1},{"degree":[3,0],"dim":1}],
            "d0":[{"from":[0,0],"matrix":[["1"]]},{"from":[1,0],"matrix":[["1"]]},{"from":[2,0],"matrix":[["1"]]}]}"#;
        let e = module_from_json(bad_relation).unwrap_err();
        assert!(e.message.contains("d0^n"), "{e}");
        let bad_shape = r#"{"scheme":"Z2","n":3,"m":5,"components":[{"degree":[0,0],"dim":1},{"degree":[1,0],"dim":1}],
            "d0":[{"from":[0,0],"matrix":[["1","2"]]}]}"#;
        assert!(module_from_json(bad_shape).unwrap_err().location.contains("row 0"));
        let bad_scalar = r#"{"scheme":"Z2","n":3,"m":5,"components":[{"degree":[0,0],"dim":1},{"degree":[1,0],"dim":1}],
            "d0":[{"from":[0,0],"matrix":[["1/0"]]}]}"#;
        assert!(module_from_json(bad_scalar).unwrap_err().location.contains("column 0"));
        assert!(module_from_json("{").unwrap_err().location.starts_with("line"));
        let dup = r#"{"scheme":"Z2","n":3,"m":5,"components":[{"degree":[0,0],"dim":1},{"degree":[0,0],"dim":1}]}"#;
        assert!(module_from_json(dup).is_err());
    }

    #[test]
    fn scalars_are_written_as_polynomials_in_t() {
        let s = GradingScheme::z2(3, 5).unwrap();
        let f = s.field();
        let v = &f.rational(cyclocat_core::arith::Rational::new(1, 2)) + &f.root_of_unity(2).scale(&cyclocat_core::arith::Rational::from_int(3));
        let x = GradedModule::interval(&s, (0, 0), Direction::D0, 2).unwrap();
        let mut d0 = BTreeMap::new();
        d0.insert((0, 0), Matrix::from_rows(f, vec![vec![v]], 1));
        let y = GradedModule::from_blocks(&s, x.dims().clone(), d0, BTreeMap::new()).unwrap();
        assert!(module_to_json(&y).contains("\"1/2 + 3*t^2\""));
    }
}
