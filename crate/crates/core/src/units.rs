//! Natural-unit core (m = c = 1) and SI conversions.
//!
//! Every formula in this crate works with dimensionless numbers: momenta in
//! units of `mc`, energies in units of `mc²`, and the magnetic field through
//! `b = ħ|q|B / (m²c²)`, the Landau cyclotron energy in units of `mc²`.
//! This module is the only place that knows about kilograms and teslas.
//!
//! Constants are CODATA 2018:
//!
//! | symbol | value | unit |
//! |--------|-------|------|
//! | c      | 299 792 458 (exact) | m/s |
//! | ħ      | 1.054 571 817 × 10⁻³⁴ (exact) | J·s |
//! | e      | 1.602 176 634 × 10⁻¹⁹ (exact) | C |
//! | mₑ     | 9.109 383 7015 × 10⁻³¹ | kg |
//! | mₚ     | 1.672 621 923 69 × 10⁻²⁷ | kg |
//! | mₙ     | 1.674 927 498 04 × 10⁻²⁷ | kg |
//! | m_μ    | 1.883 531 627 × 10⁻²⁸ | kg |
//! | μ_B    | 9.274 010 0783 × 10⁻²⁴ | J/T |
//! | \|μₚ\|   | 1.410 606 797 36 × 10⁻²⁶ | J/T |
//! | \|μₙ\|   | 9.662 3651 × 10⁻²⁷ | J/T |
//! | \|μ_μ\|  | 4.490 448 30 × 10⁻²⁶ | J/T |

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
pub const HBAR: f64 = 1.054_571_817e-34;
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;
pub const PROTON_MASS: f64 = 1.672_621_923_69e-27;
pub const NEUTRON_MASS: f64 = 1.674_927_498_04e-27;
pub const MUON_MASS: f64 = 1.883_531_627e-28;
pub const BOHR_MAGNETON: f64 = 9.274_010_078_3e-24;
pub const PROTON_MAGNETIC_MOMENT: f64 = 1.410_606_797_36e-26;
pub const NEUTRON_MAGNETIC_MOMENT: f64 = 9.662_365_1e-27;
pub const MUON_MAGNETIC_MOMENT: f64 = 4.490_448_30e-26;

/// Shipped particle presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    Electron,
    Proton,
    Neutron,
    Muon,
}

impl Preset {
    pub const ALL: [Preset; 4] = [
        Preset::Electron,
        Preset::Proton,
        Preset::Neutron,
        Preset::Muon,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Electron => "electron",
            Preset::Proton => "proton",
            Preset::Neutron => "neutron",
            Preset::Muon => "muon",
        }
    }

    pub fn spec(self) -> ParticleSpec {
        let (mass, charge, mdm) = match self {
            // Dirac moment: g = 2 exactly, so μ = μ_B.
            Preset::Electron => (ELECTRON_MASS, -ELEMENTARY_CHARGE, BOHR_MAGNETON),
            Preset::Proton => (PROTON_MASS, ELEMENTARY_CHARGE, PROTON_MAGNETIC_MOMENT),
            Preset::Neutron => (NEUTRON_MASS, 0.0, NEUTRON_MAGNETIC_MOMENT),
            Preset::Muon => (MUON_MASS, -ELEMENTARY_CHARGE, MUON_MAGNETIC_MOMENT),
        };
        ParticleSpec {
            name: self.name().to_string(),
            mass,
            charge,
            mdm,
            edm: 0.0,
        }
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidInput(format!("unknown particle preset {s:?}")))
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A physical spin-1/2 particle in SI units.
///
/// `mdm` and `edm` are the sizes of the magnetic and electric dipole
/// moments; the sign convention lives in the interaction energy
/// `δ = dE − μB`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParticleSpec {
    pub name: String,
    /// kg
    pub mass: f64,
    /// C
    pub charge: f64,
    /// J/T
    pub mdm: f64,
    /// C·m
    pub edm: f64,
}

impl ParticleSpec {
    pub fn new(
        name: impl Into<String>,
        mass: f64,
        charge: f64,
        mdm: f64,
        edm: f64,
    ) -> Result<Self> {
        let spec = ParticleSpec {
            name: name.into(),
            mass,
            charge,
            mdm,
            edm,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn preset(p: Preset) -> Self {
        p.spec()
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.mass, self.charge, self.mdm, self.edm]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidInput(format!(
                "particle {:?} has a non-finite parameter",
                self.name
            )));
        }
        if self.mass <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "particle mass must be positive, got {}",
                self.mass
            )));
        }
        if self.mdm < 0.0 || self.edm < 0.0 {
            return Err(Error::InvalidInput(
                "dipole moment sizes must be non-negative".into(),
            ));
        }
        Ok(())
    }

    /// Rest energy `mc²` in joules.
    pub fn rest_energy(&self) -> f64 {
        self.mass * SPEED_OF_LIGHT * SPEED_OF_LIGHT
    }

    /// Momentum unit `mc` in kg·m/s.
    pub fn momentum_unit(&self) -> f64 {
        self.mass * SPEED_OF_LIGHT
    }

    /// Field at which `b = 1`, in tesla. `None` for neutral particles.
    pub fn critical_field(&self) -> Option<f64> {
        if self.charge == 0.0 {
            None
        } else {
            Some(self.rest_energy() * self.mass / (HBAR * self.charge.abs()))
        }
    }
}

/// Static collinear fields along the common field axis.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FieldSpec {
    /// V/m
    pub e_field: f64,
    /// T
    pub b_field: f64,
}

impl FieldSpec {
    pub fn new(e_field: f64, b_field: f64) -> Result<Self> {
        if !e_field.is_finite() || !b_field.is_finite() {
            return Err(Error::InvalidInput("field values must be finite".into()));
        }
        Ok(FieldSpec { e_field, b_field })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    /// units of `mc`
    Momentum,
    /// units of `mc²`
    Energy,
    /// `b = ħ|q|B/(m²c²)`
    FieldParameter,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Momentum => "momentum",
            Kind::Energy => "energy",
            Kind::FieldParameter => "field-parameter",
        }
    }
}

/// A dimensionless number tagged with what it measures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NaturalValue {
    pub value: f64,
    pub kind: Kind,
}

impl NaturalValue {
    pub fn new(value: f64, kind: Kind) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::InvalidInput(format!(
                "{} value must be finite",
                kind.name()
            )));
        }
        Ok(NaturalValue { value, kind })
    }

    pub fn energy(value: f64) -> Result<Self> {
        Self::new(value, Kind::Energy)
    }

    pub fn momentum(value: f64) -> Result<Self> {
        Self::new(value, Kind::Momentum)
    }

    pub fn field_parameter(value: f64) -> Result<Self> {
        Self::new(value, Kind::FieldParameter)
    }

    fn expect(&self, kind: Kind) -> Result<f64> {
        if self.kind == kind {
            Ok(self.value)
        } else {
            Err(Error::KindMismatch {
                expected: kind.name(),
                found: self.kind.name(),
            })
        }
    }
}

/// Interaction energy `δ = (dE − μB)/(mc²)`.
pub fn delta_from_fields(p: &ParticleSpec, f: &FieldSpec) -> Result<NaturalValue> {
    p.validate()?;
    let joules = p.edm * f.e_field - p.mdm * f.b_field;
    NaturalValue::energy(joules / p.rest_energy())
}

/// Landau field parameter `b = ħ|q|B/(m²c²)`.
pub fn b_param(p: &ParticleSpec, f: &FieldSpec) -> Result<NaturalValue> {
    p.validate()?;
    if p.charge == 0.0 {
        return Err(Error::NeutralParticle(p.name.clone()));
    }
    if f.b_field < 0.0 {
        return Err(Error::NegativeField(f.b_field));
    }
    NaturalValue::field_parameter(HBAR * p.charge.abs() * f.b_field / (p.mass * p.rest_energy()))
}

pub fn to_si_energy(v: NaturalValue, p: &ParticleSpec) -> Result<f64> {
    Ok(v.expect(Kind::Energy)? * p.rest_energy())
}

pub fn from_si_energy(joules: f64, p: &ParticleSpec) -> Result<NaturalValue> {
    NaturalValue::energy(joules / p.rest_energy())
}

pub fn to_si_momentum(v: NaturalValue, p: &ParticleSpec) -> Result<f64> {
    Ok(v.expect(Kind::Momentum)? * p.momentum_unit())
}

pub fn from_si_momentum(si: f64, p: &ParticleSpec) -> Result<NaturalValue> {
    NaturalValue::momentum(si / p.momentum_unit())
}

/// Inverse of [`b_param`]: field in tesla.
pub fn to_si_field(v: NaturalValue, p: &ParticleSpec) -> Result<f64> {
    let b = v.expect(Kind::FieldParameter)?;
    let crit = p
        .critical_field()
        .ok_or_else(|| Error::NeutralParticle(p.name.clone()))?;
    Ok(b * crit)
}

/// Larmor angular frequency `ω = Δ·mc²/ħ` in rad/s for a splitting given in units of `mc²`.
pub fn larmor_frequency(splitting: f64, p: &ParticleSpec) -> f64 {
    splitting * p.rest_energy() / HBAR
}
