//! The JSON bundle format: named complexes and maps, and sections that
//! assign them to a lax diagram, a symmetric functor or a witness.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::sync::Arc;

use cosegal::chain::{format_rational, int, parse_rational, tensor, ChainComplex, ChainMap, QMatrix, Rational};
use cosegal::commutative::SymLaxFunctor;
use cosegal::laxdiag::{laxity_pairs, Bundle, HomFunctor, LaxDiagram, LaxMorphism};
use cosegal::seqcat::{LabeledSeq, ObjectSet, PhiShape, Surjection, SurjectiveFunction, SxShapes};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const FORMAT_VERSION: u32 = 1;

/// A matrix as rows of rationals, or as `(row, column, value)` triples for
/// sparse data. Shapes come from the complexes involved.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixSpec {
    Dense(Vec<Vec<String>>),
    Sparse { entries: Vec<(usize, usize, String)> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexSpec {
    pub dims: Vec<usize>,
    /// `boundaries[k]` is `d_{k+1}: C_{k+1} -> C_k`.
    #[serde(default)]
    pub boundaries: Vec<MatrixSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapSpec {
    pub source: String,
    pub target: String,
    /// `components[n]: source_n -> target_n`; missing degrees are zero.
    #[serde(default)]
    pub components: Vec<MatrixSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValueEntry {
    pub seq: Vec<String>,
    pub complex: String,
}

/// The map of the elementary arrow into `seq` collapsing along
/// `surjection` (gap values).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructureEntry {
    pub seq: Vec<String>,
    pub surjection: Vec<usize>,
    pub map: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LaxityEntry {
    pub left: Vec<String>,
    pub right: Vec<String>,
    pub map: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagramSection {
    pub objects: Vec<String>,
    pub truncation: usize,
    pub values: Vec<ValueEntry>,
    #[serde(default)]
    pub structure: Vec<StructureEntry>,
    #[serde(default)]
    pub laxity: Vec<LaxityEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentEntry {
    pub seq: Vec<String>,
    pub map: String,
}

/// A morphism from the main diagram to `target`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessSection {
    pub target: DiagramSection,
    pub components: Vec<ComponentEntry>,
}

/// The map `C(m) -> C(n)` of a generator `function: n ->> m`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorEntry {
    pub function: Vec<usize>,
    pub map: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymLaxityEntry {
    pub left: usize,
    pub right: usize,
    pub map: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetricSection {
    pub truncation: usize,
    /// `values[n - 1]` names `C(n)`.
    pub values: Vec<String>,
    pub generators: Vec<GeneratorEntry>,
    #[serde(default)]
    pub laxity: Vec<SymLaxityEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BundleFile {
    pub format: u32,
    #[serde(default)]
    pub complexes: BTreeMap<String, ComplexSpec>,
    #[serde(default)]
    pub maps: BTreeMap<String, MapSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagram: Option<DiagramSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetric: Option<SymmetricSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessSection>,
}

/// What a file describes, resolved.
#[derive(Clone, Debug)]
pub enum Loaded {
    Diagram { diagram: LaxDiagram, witness: Option<LaxMorphism> },
    Symmetric(SymLaxFunctor),
}

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn matrix(spec: &MatrixSpec, rows: usize, cols: usize, at: &str) -> Result<QMatrix, CliError> {
    let parse = |s: &str| parse_rational(s).map_err(|e| input(format!("{at}: {e}")));
    match spec {
        MatrixSpec::Dense(r) => {
            // an empty list stands for any matrix with no rows or no columns
            if r.is_empty() && (rows == 0 || cols == 0) {
                return Ok(QMatrix::zeros(rows, cols));
            }
            if r.len() != rows || r.iter().any(|row| row.len() != cols) {
                return Err(input(format!("{at}: expected a {rows}x{cols} matrix")));
            }
            let entries = r.iter().flatten().map(|s| parse(s)).collect::<Result<Vec<Rational>, _>>()?;
            QMatrix::from_entries(rows, cols, entries).map_err(|e| input(format!("{at}: {e}")))
        }
        MatrixSpec::Sparse { entries } => {
            let mut m = QMatrix::zeros(rows, cols);
            for (i, j, v) in entries {
                if *i >= rows || *j >= cols {
                    return Err(input(format!("{at}: entry ({i}, {j}) outside {rows}x{cols}")));
                }
                m.set(*i, *j, parse(v)?);
            }
            Ok(m)
        }
    }
}

fn matrix_spec(m: &QMatrix) -> MatrixSpec {
    let zero = int(0);
    let nonzero: Vec<(usize, usize, String)> = (0..m.rows())
        .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
        .filter(|&(i, j)| *m.get(i, j) != zero)
        .map(|(i, j)| (i, j, format_rational(m.get(i, j))))
        .collect();
    if nonzero.len() * 3 < m.rows() * m.cols() {
        MatrixSpec::Sparse { entries: nonzero }
    } else {
        MatrixSpec::Dense((0..m.rows()).map(|i| m.row(i).iter().map(format_rational).collect()).collect())
    }
}

/// Complexes and maps by name, resolved once.
struct Tables {
    complexes: HashMap<String, ChainComplex>,
    maps: BTreeMap<String, MapSpec>,
    resolved: HashMap<String, ChainMap>,
}

impl Tables {
    fn new(file: &BundleFile) -> Result<Self, CliError> {
        let mut complexes = HashMap::new();
        for (name, spec) in &file.complexes {
            let at = format!("complex {name}");
            let len = spec.dims.len();
            if spec.boundaries.len() > len.saturating_sub(1) {
                return Err(input(format!("{at}: {} boundaries for {len} degrees", spec.boundaries.len())));
            }
            let mut boundaries = Vec::with_capacity(len.saturating_sub(1));
            for k in 0..len.saturating_sub(1) {
                let (r, c) = (spec.dims[k], spec.dims[k + 1]);
                boundaries.push(match spec.boundaries.get(k) {
                    Some(b) => matrix(b, r, c, &format!("{at} boundary d_{}", k + 1))?,
                    None => QMatrix::zeros(r, c),
                });
            }
            let c = ChainComplex::new(spec.dims.clone(), boundaries).map_err(|e| input(format!("{at}: {e}")))?;
            complexes.insert(name.clone(), c);
        }
        let mut tables = Tables { complexes, maps: file.maps.clone(), resolved: HashMap::new() };
        for name in file.maps.keys() {
            tables.map(name)?;
        }
        Ok(tables)
    }

    fn complex(&self, name: &str) -> Result<ChainComplex, CliError> {
        self.complexes.get(name).cloned().ok_or_else(|| input(format!("unknown complex {name:?}")))
    }

    fn map(&mut self, name: &str) -> Result<ChainMap, CliError> {
        if let Some(m) = self.resolved.get(name) {
            return Ok(m.clone());
        }
        let spec = self.maps.get(name).ok_or_else(|| input(format!("unknown map {name:?}")))?.clone();
        let (s, t) = (self.complex(&spec.source)?, self.complex(&spec.target)?);
        let at = format!("map {name}");
        let len = s.len().max(t.len());
        if spec.components.len() > len {
            return Err(input(format!("{at}: {} components for {len} degrees", spec.components.len())));
        }
        let comps = (0..len)
            .map(|n| match spec.components.get(n) {
                Some(c) => matrix(c, t.dim(n), s.dim(n), &format!("{at} degree {n}")),
                None => Ok(QMatrix::zeros(t.dim(n), s.dim(n))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let m = ChainMap::new(s, t, comps).map_err(|e| input(format!("{at}: {e}")))?;
        self.resolved.insert(name.to_string(), m.clone());
        Ok(m)
    }

    /// A map with the given endpoints.
    fn map_between(&mut self, name: &str, s: &ChainComplex, t: &ChainComplex, at: &str) -> Result<ChainMap, CliError> {
        let m = self.map(name)?;
        if m.source() != s || m.target() != t {
            return Err(input(format!("{at}: map {name} has the wrong source or target")));
        }
        Ok(m)
    }
}

fn diagram(section: &DiagramSection, tables: &mut Tables) -> Result<LaxDiagram, CliError> {
    if section.objects.is_empty() {
        return Err(input("the object set is empty"));
    }
    let objects = ObjectSet::new(section.objects.iter().cloned()).map_err(|e| input(e.to_string()))?;
    let shapes = Arc::new(SxShapes::new(&objects, section.truncation).map_err(|e| input(e.to_string()))?);
    let seq = |labels: &[String]| objects.parse_seq(labels).map_err(|e| input(format!("sequence {labels:?}: {e}")));
    let mut values: HashMap<LabeledSeq, ChainComplex> = HashMap::new();
    for v in &section.values {
        let s = seq(&v.seq)?;
        shapes.locate(&s).map_err(|e| input(format!("sequence {:?}: {e}", v.seq)))?;
        if values.insert(s, tables.complex(&v.complex)?).is_some() {
            return Err(input(format!("sequence {:?} is assigned twice", v.seq)));
        }
    }
    let mut generators: Vec<HashMap<usize, ChainMap>> = vec![HashMap::new(); shapes.shapes().len()];
    let value_of = |s: &LabeledSeq, values: &HashMap<LabeledSeq, ChainComplex>| {
        values.get(s).cloned().ok_or_else(|| input(format!("no value for {}", objects.format_seq(s))))
    };
    for e in &section.structure {
        let z = seq(&e.seq)?;
        let (p, zi) = shapes.locate(&z).map_err(|err| input(format!("sequence {:?}: {err}", e.seq)))?;
        let target = e.surjection.last().map_or(0, |v| v + 1);
        let f = Surjection::new(target, e.surjection.clone())
            .map_err(|err| input(format!("structure map into {:?}: {err}", e.seq)))?;
        let shape = &shapes.shapes()[p];
        let arrow = shape
            .find_arrow(zi, &f)
            .filter(|&a| shape.arrow(a).is_elementary())
            .ok_or_else(|| input(format!("{:?} into {:?} is not an elementary arrow", e.surjection, e.seq)))?;
        let w = shape.seq(shape.arrow(arrow).from).clone();
        let at = format!("structure map {} -> {}", objects.format_seq(&w), objects.format_seq(&z));
        let m = tables.map_between(&e.map, &value_of(&w, &values)?, &value_of(&z, &values)?, &at)?;
        generators[p].insert(arrow, m);
    }
    let mut components = Vec::with_capacity(shapes.shapes().len());
    for (p, shape) in shapes.shapes().iter().enumerate() {
        let vals = shape.sequences().iter().map(|s| value_of(s, &values)).collect::<Result<Vec<_>, _>>()?;
        for &g in shape.generating_arrows() {
            if !generators[p].contains_key(&g) {
                let a = shape.arrow(g);
                return Err(input(format!(
                    "no structure map for {} -> {}",
                    objects.format_seq(shape.seq(a.from)),
                    objects.format_seq(shape.seq(a.to))
                )));
            }
        }
        components.push(HomFunctor::synthesize(shape.clone(), vals, &generators[p]).map_err(|e| input(e.to_string()))?);
    }
    let bundle = Bundle::new(shapes.clone(), components).map_err(|e| input(e.to_string()))?;
    let mut laxity = HashMap::new();
    for e in &section.laxity {
        let (s, t) = (seq(&e.left)?, seq(&e.right)?);
        let st = s.concat(&t).map_err(|err| input(format!("laxity {:?} {:?}: {err}", e.left, e.right)))?;
        let at = format!("laxity {}⊗{}", objects.format_seq(&s), objects.format_seq(&t));
        let src = tensor(&value_of(&s, &values)?, &value_of(&t, &values)?);
        let m = tables.map_between(&e.map, &src, &value_of(&st, &values)?, &at)?;
        laxity.insert((s, t), m);
    }
    for (s, t) in laxity_pairs(&shapes) {
        if !laxity.contains_key(&(s.clone(), t.clone())) {
            return Err(input(format!("no laxity map for {}⊗{}", objects.format_seq(&s), objects.format_seq(&t))));
        }
    }
    LaxDiagram::new(bundle, laxity).map_err(|e| input(e.to_string()))
}

fn symmetric(section: &SymmetricSection, tables: &mut Tables) -> Result<SymLaxFunctor, CliError> {
    let n = section.truncation;
    if section.values.len() != n {
        return Err(input(format!("{} symmetric values for truncation {n}", section.values.len())));
    }
    let values = section.values.iter().map(|v| tables.complex(v)).collect::<Result<Vec<_>, _>>()?;
    let shape = Arc::new(PhiShape::new(n).map_err(|e| input(e.to_string()))?);
    let mut generators = HashMap::new();
    for g in &section.generators {
        let target = g.function.iter().max().map_or(0, |m| m + 1);
        let f = SurjectiveFunction::new(target, g.function.clone()).map_err(|e| input(e.to_string()))?;
        if f.source() == 0 || f.source() > n {
            return Err(input(format!("generator {:?} is outside the truncation", g.function)));
        }
        let at = format!("generator {:?}", g.function);
        let m = tables.map_between(&g.map, &values[f.target() - 1], &values[f.source() - 1], &at)?;
        generators.insert(f, m);
    }
    let mut laxity = BTreeMap::new();
    for e in &section.laxity {
        if e.left == 0 || e.right == 0 || e.left + e.right > n {
            return Err(input(format!("laxity ({}, {}) is outside the truncation", e.left, e.right)));
        }
        let at = format!("laxity ({}, {})", e.left, e.right);
        let src = tensor(&values[e.left - 1], &values[e.right - 1]);
        laxity.insert((e.left, e.right), tables.map_between(&e.map, &src, &values[e.left + e.right - 1], &at)?);
    }
    SymLaxFunctor::new(shape, values, generators, laxity).map_err(|e| input(e.to_string()))
}

pub fn resolve(file: &BundleFile) -> Result<Loaded, CliError> {
    if file.format != FORMAT_VERSION {
        return Err(input(format!("unsupported format version {}", file.format)));
    }
    let mut tables = Tables::new(file)?;
    match (&file.diagram, &file.symmetric) {
        (Some(d), None) => {
            let source = diagram(d, &mut tables)?;
            let witness = match &file.witness {
                None => None,
                Some(w) => {
                    let target = diagram(&w.target, &mut tables)?;
                    let shapes = source.shapes().clone();
                    let objects = shapes.objects();
                    let mut found: HashMap<LabeledSeq, ChainMap> = HashMap::new();
                    for c in &w.components {
                        let s = objects.parse_seq(&c.seq).map_err(|e| input(e.to_string()))?;
                        let at = format!("witness component at {}", objects.format_seq(&s));
                        let (src, tgt) = (
                            source.value(&s).map_err(|e| input(e.to_string()))?.clone(),
                            target.value(&s).map_err(|e| input(e.to_string()))?.clone(),
                        );
                        found.insert(s, tables.map_between(&c.map, &src, &tgt, &at)?);
                    }
                    let components = shapes
                        .shapes()
                        .iter()
                        .map(|sh| {
                            sh.sequences()
                                .iter()
                                .map(|s| {
                                    found.get(s).cloned().ok_or_else(|| {
                                        input(format!("no witness component at {}", objects.format_seq(s)))
                                    })
                                })
                                .collect::<Result<Vec<_>, _>>()
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    Some(LaxMorphism::new_unchecked(source.clone(), target, components))
                }
            };
            Ok(Loaded::Diagram { diagram: source, witness })
        }
        (None, Some(s)) => {
            if file.witness.is_some() {
                return Err(input("a witness needs a diagram section"));
            }
            Ok(Loaded::Symmetric(symmetric(s, &mut tables)?))
        }
        (Some(_), Some(_)) => Err(input("a file holds either a diagram or a symmetric section, not both")),
        (None, None) => Err(input("the file has neither a diagram nor a symmetric section")),
    }
}

pub fn parse_str(text: &str) -> Result<Loaded, CliError> {
    let file: BundleFile = serde_json::from_str(text).map_err(|e| input(format!("malformed bundle: {e}")))?;
    resolve(&file)
}

pub fn parse(path: &Path) -> Result<Loaded, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    parse_str(&text)
}

/// Names complexes and maps in order of first use.
#[derive(Default)]
struct Namer {
    complexes: Vec<ChainComplex>,
    maps: Vec<ChainMap>,
}

impl Namer {
    fn complex(&mut self, c: &ChainComplex) -> String {
        let i = self.complexes.iter().position(|x| x == c).unwrap_or_else(|| {
            self.complexes.push(c.clone());
            self.complexes.len() - 1
        });
        format!("c{i}")
    }

    fn map(&mut self, m: &ChainMap) -> String {
        self.complex(m.source());
        self.complex(m.target());
        let i = self.maps.iter().position(|x| x == m).unwrap_or_else(|| {
            self.maps.push(m.clone());
            self.maps.len() - 1
        });
        format!("m{i}")
    }

    fn finish(self, file: &mut BundleFile) {
        for (i, c) in self.complexes.iter().enumerate() {
            let boundaries = (1..c.len()).map(|k| matrix_spec(&c.boundary(k))).collect();
            file.complexes.insert(format!("c{i}"), ComplexSpec { dims: c.dims().to_vec(), boundaries });
        }
        for (i, m) in self.maps.iter().enumerate() {
            let position = |x: &ChainComplex| self.complexes.iter().position(|y| y == x).expect("named");
            let components = (0..m.components().len()).map(|n| matrix_spec(&m.component(n))).collect();
            file.maps.insert(
                format!("m{i}"),
                MapSpec {
                    source: format!("c{}", position(m.source())),
                    target: format!("c{}", position(m.target())),
                    components,
                },
            );
        }
    }
}

fn diagram_section(f: &LaxDiagram, namer: &mut Namer) -> DiagramSection {
    let shapes = f.shapes();
    let objects = shapes.objects();
    let names = |s: &LabeledSeq| s.labels().iter().map(|&l| objects.name(l).to_string()).collect::<Vec<_>>();
    let mut values = Vec::new();
    let mut structure = Vec::new();
    for c in f.bundle().components() {
        let shape = c.shape();
        for (i, s) in shape.sequences().iter().enumerate() {
            values.push(ValueEntry { seq: names(s), complex: namer.complex(c.value(i)) });
        }
        for &g in shape.generating_arrows() {
            let a = shape.arrow(g);
            structure.push(StructureEntry {
                seq: names(shape.seq(a.to)),
                surjection: a.surjection.values().to_vec(),
                map: namer.map(c.map(g)),
            });
        }
    }
    let laxity = laxity_pairs(shapes)
        .into_iter()
        .map(|(s, t)| LaxityEntry {
            left: names(&s),
            right: names(&t),
            map: namer.map(f.phi(&s, &t).expect("laxity present")),
        })
        .collect();
    DiagramSection {
        objects: objects.names().to_vec(),
        truncation: shapes.truncation(),
        values,
        structure,
        laxity,
    }
}

pub fn serialize_diagram(f: &LaxDiagram, witness: Option<&LaxMorphism>) -> BundleFile {
    let mut namer = Namer::default();
    let diagram = diagram_section(f, &mut namer);
    let witness = witness.map(|w| {
        let target = diagram_section(&w.target, &mut namer);
        let objects = f.shapes().objects();
        let mut components = Vec::new();
        for (p, sh) in f.shapes().shapes().iter().enumerate() {
            for (i, s) in sh.sequences().iter().enumerate() {
                components.push(ComponentEntry {
                    seq: s.labels().iter().map(|&l| objects.name(l).to_string()).collect(),
                    map: namer.map(&w.components[p][i]),
                });
            }
        }
        WitnessSection { target, components }
    });
    let mut file = BundleFile {
        format: FORMAT_VERSION,
        complexes: BTreeMap::new(),
        maps: BTreeMap::new(),
        diagram: Some(diagram),
        symmetric: None,
        witness,
    };
    namer.finish(&mut file);
    file
}

pub fn serialize_symmetric(c: &SymLaxFunctor) -> BundleFile {
    let mut namer = Namer::default();
    let values = c.values().iter().map(|v| namer.complex(v)).collect();
    let generators = c
        .shape()
        .functions()
        .iter()
        .filter(|f| cosegal::seqcat::phi::is_generator(f))
        .map(|f| GeneratorEntry { function: f.values().to_vec(), map: namer.map(c.map(f).expect("in shape")) })
        .collect();
    let n = c.truncation();
    let mut laxity = Vec::new();
    for left in 1..n {
        for right in 1..=n - left {
            laxity.push(SymLaxityEntry { left, right, map: namer.map(c.laxity(left, right).expect("present")) });
        }
    }
    let mut file = BundleFile {
        format: FORMAT_VERSION,
        complexes: BTreeMap::new(),
        maps: BTreeMap::new(),
        diagram: None,
        symmetric: Some(SymmetricSection { truncation: n, values, generators, laxity }),
        witness: None,
    };
    namer.finish(&mut file);
    file
}

pub fn to_json(file: &BundleFile) -> String {
    serde_json::to_string_pretty(file).expect("bundle files serialize") + "\n"
}

pub fn write(file: &BundleFile, path: &Path) -> Result<(), CliError> {
    std::fs::write(path, to_json(file)).map_err(|e| input(format!("{}: {e}", path.display())))
}
