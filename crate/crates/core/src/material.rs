//! Measured material constants and the Frenkel-Kontorova / sine-Gordon
//! parameters derived from them.
//!
//! The database is plain UTF-8 text with one record per line. A record is a
//! whitespace-separated list of `key=value` pairs:
//!
//! ```text
//! # comment
//! name=Ag atomic_mass_e26_kg=17.9119 lattice_const_nm=0.40776 shear_modulus_GPa=30 bulk_modulus_GPa=100
//! ```
//!
//! Values are written in the units named by the key and converted to SI on
//! load. Decimal points only; blank lines and lines starting with `#` are
//! skipped.

use std::f64::consts::PI;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The bundled seven-metal database.
pub const BUNDLED_DB: &str = include_str!("../data/materials.db");

const MASS_UNIT: f64 = 1e-26;
const LENGTH_UNIT: f64 = 1e-9;
const MODULUS_UNIT: f64 = 1e9;

const FIELDS: [(&str, f64); 4] = [
    ("atomic_mass_e26_kg", MASS_UNIT),
    ("lattice_const_nm", LENGTH_UNIT),
    ("shear_modulus_GPa", MODULUS_UNIT),
    ("bulk_modulus_GPa", MODULUS_UNIT),
];

/// Measured constants of one element, in SI units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Material {
    name: String,
    /// kg
    atomic_mass: f64,
    /// m
    lattice_const: f64,
    /// Pa
    shear_modulus: f64,
    /// Pa
    bulk_modulus: f64,
}

impl Material {
    pub fn new(
        name: impl Into<String>,
        atomic_mass: f64,
        lattice_const: f64,
        shear_modulus: f64,
        bulk_modulus: f64,
    ) -> Result<Self> {
        let name = name.into();
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(Error::validation("name", format!("{name:?} must be a non-empty token")));
        }
        for (field, value) in [
            ("atomic_mass", atomic_mass),
            ("lattice_const", lattice_const),
            ("shear_modulus", shear_modulus),
            ("bulk_modulus", bulk_modulus),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::validation(field, format!("{value} is not strictly positive")));
            }
        }
        if !(1e-11 < lattice_const && lattice_const < 1e-8) {
            return Err(Error::validation(
                "lattice_const",
                format!("{lattice_const:e} m is outside (1e-11, 1e-8) m"),
            ));
        }
        Ok(Material {
            name,
            atomic_mass,
            lattice_const,
            shear_modulus,
            bulk_modulus,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn atomic_mass(&self) -> f64 {
        self.atomic_mass
    }

    pub fn lattice_const(&self) -> f64 {
        self.lattice_const
    }

    pub fn shear_modulus(&self) -> f64 {
        self.shear_modulus
    }

    pub fn bulk_modulus(&self) -> f64 {
        self.bulk_modulus
    }

    /// Serializes the material as one database record.
    ///
    /// Values that were parsed from a record are written back so that parsing
    /// the output reproduces the SI values bit for bit.
    pub fn to_record(&self) -> String {
        let values = [
            self.atomic_mass,
            self.lattice_const,
            self.shear_modulus,
            self.bulk_modulus,
        ];
        let mut out = format!("name={}", self.name);
        for ((key, unit), si) in FIELDS.iter().zip(values) {
            out.push_str(&format!(" {key}={}", table_value(si, *unit)));
        }
        out
    }
}

impl fmt::Display for Material {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_record())
    }
}

/// Finds a value in table units whose product with `unit` is exactly `si`.
fn table_value(si: f64, unit: f64) -> f64 {
    let guess = si / unit;
    let mut candidate = guess;
    for _ in 0..8 {
        if candidate * unit == si {
            return candidate;
        }
        candidate = next_toward(candidate, if candidate * unit < si { f64::INFINITY } else { 0.0 });
    }
    guess
}

fn next_toward(x: f64, target: f64) -> f64 {
    let bits = x.to_bits();
    if target > x {
        f64::from_bits(bits + 1)
    } else {
        f64::from_bits(bits - 1)
    }
}

/// Parses database text. Record order is preserved.
pub fn parse_materials(text: &str) -> Result<Vec<Material>> {
    let mut materials = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        materials.push(parse_record(line, index + 1)?);
    }
    Ok(materials)
}

fn parse_record(line: &str, line_no: usize) -> Result<Material> {
    let parse_err = |message: String| Error::Parse {
        line: line_no,
        message,
    };
    let mut name = None;
    let mut values: [Option<f64>; 4] = [None; 4];
    for token in line.split_whitespace() {
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| parse_err(format!("expected key=value, found {token:?}")))?;
        if key == "name" {
            if name.replace(value.to_string()).is_some() {
                return Err(parse_err("duplicate key \"name\"".into()));
            }
            continue;
        }
        let slot = FIELDS
            .iter()
            .position(|(k, _)| *k == key)
            .ok_or_else(|| parse_err(format!("unknown key {key:?}")))?;
        let number: f64 = value
            .parse()
            .map_err(|_| parse_err(format!("{key}: {value:?} is not a number")))?;
        if values[slot].replace(number).is_some() {
            return Err(parse_err(format!("duplicate key {key:?}")));
        }
    }
    let name = name.ok_or_else(|| parse_err("missing key \"name\"".into()))?;
    let mut si = [0.0; 4];
    for (i, ((key, unit), value)) in FIELDS.iter().zip(values).enumerate() {
        si[i] = value.ok_or_else(|| parse_err(format!("missing key {key:?}")))? * unit;
    }
    Material::new(name, si[0], si[1], si[2], si[3])
}

pub fn load_materials(path: impl AsRef<Path>) -> Result<Vec<Material>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_materials(&text)
}

pub fn bundled_materials() -> Vec<Material> {
    parse_materials(BUNDLED_DB).expect("bundled database is valid")
}

pub fn find<'a>(materials: &'a [Material], name: &str) -> Result<&'a Material> {
    materials
        .iter()
        .find(|m| m.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::UnknownMaterial(name.to_string()))
}

/// Which physical object the chain models. The two objects use different
/// substrate amplitudes for the same shear modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelMode {
    /// ε = 2a³M_s/π²
    Crowdion,
    /// ε = a³M_s/(2π²)
    Dislocation,
}

impl ModelMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelMode::Crowdion => "crowdion",
            ModelMode::Dislocation => "dislocation",
        }
    }
}

impl fmt::Display for ModelMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ModelMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "crowdion" => Ok(ModelMode::Crowdion),
            "dislocation" => Ok(ModelMode::Dislocation),
            other => Err(Error::validation("mode", format!("{other:?} is not crowdion|dislocation"))),
        }
    }
}

/// Chain constants in SI units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    g: f64,
    epsilon: f64,
    a: f64,
    atom_mass: f64,
    m_dimless: f64,
    mode: ModelMode,
}

impl ModelParams {
    /// Builds parameters from raw constants. `epsilon` may be zero (flat
    /// substrate); everything else must be strictly positive.
    pub fn new(g: f64, epsilon: f64, a: f64, atom_mass: f64, mode: ModelMode) -> Result<Self> {
        for (field, value) in [("G", g), ("a", a), ("atom_mass", atom_mass)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::validation(field, format!("{value} is not strictly positive")));
            }
        }
        if !(epsilon.is_finite() && epsilon >= 0.0) {
            return Err(Error::validation("epsilon", format!("{epsilon} is negative")));
        }
        let m_dimless = PI * (2.0 * epsilon / (a * a * g)).sqrt();
        Ok(ModelParams {
            g,
            epsilon,
            a,
            atom_mass,
            m_dimless,
            mode,
        })
    }

    /// Harmonic coupling G, N/m.
    pub fn g(&self) -> f64 {
        self.g
    }

    /// Substrate amplitude ε, J.
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Lattice constant, m.
    pub fn a(&self) -> f64 {
        self.a
    }

    /// Atom mass, kg.
    pub fn atom_mass(&self) -> f64 {
        self.atom_mass
    }

    /// Dimensionless wavenumber m = π√(2ε/(a²G)), per lattice site.
    pub fn m_dimless(&self) -> f64 {
        self.m_dimless
    }

    pub fn mode(&self) -> ModelMode {
        self.mode
    }

    /// a²G, the gradient stiffness of the continuum field, J.
    pub fn stiffness(&self) -> f64 {
        self.a * self.a * self.g
    }

    /// Sound velocity c = √(a²G/M), m/s.
    pub fn sound_speed(&self) -> f64 {
        (self.stiffness() / self.atom_mass).sqrt()
    }
}

pub fn derive_params(mat: &Material, mode: ModelMode) -> ModelParams {
    let a = mat.lattice_const;
    let a3_ms = a * a * a * mat.shear_modulus;
    let epsilon = match mode {
        ModelMode::Crowdion => 2.0 * a3_ms / (PI * PI),
        ModelMode::Dislocation => a3_ms / (2.0 * PI * PI),
    };
    ModelParams::new(mat.bulk_modulus * a, epsilon, a, mat.atomic_mass, mode)
        .expect("a validated material yields valid parameters")
}

pub fn sound_speed(p: &ModelParams) -> f64 {
    p.sound_speed()
}
