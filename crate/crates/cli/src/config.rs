//! JSON run configuration and its resolution into validated model inputs.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use rlcm::circuits::{preset, CircuitParams, Topology};
use rlcm::memristor::{DriftParams, WindowKind};
use rlcm::transient::{Method, SimConfig};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TopologyName {
    Series,
    Parallel,
}

impl From<TopologyName> for Topology {
    fn from(t: TopologyName) -> Self {
        match t {
            TopologyName::Series => Topology::Series,
            TopologyName::Parallel => Topology::Parallel,
        }
    }
}

impl From<Topology> for TopologyName {
    fn from(t: Topology) -> Self {
        match t {
            Topology::Series => TopologyName::Series,
            Topology::Parallel => TopologyName::Parallel,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Components {
    pub r_ohm: f64,
    pub l_henry: f64,
    pub c_farad: f64,
    pub r_m_ohm: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WindowName {
    Unity,
    Joglekar,
}

/// Drift-model section; omitted keys take the library defaults.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MemristorSection {
    pub r_on_ohm: f64,
    pub r_off_ohm: f64,
    pub d_m: f64,
    pub mobility_m2_per_vs: f64,
    pub window: WindowName,
    pub p: u32,
}

impl Default for MemristorSection {
    fn default() -> Self {
        let d = DriftParams::default();
        Self {
            r_on_ohm: d.r_on,
            r_off_ohm: d.r_off,
            d_m: d.d_width,
            mobility_m2_per_vs: d.mobility,
            window: match d.window_kind {
                WindowKind::Unity => WindowName::Unity,
                WindowKind::Joglekar => WindowName::Joglekar,
            },
            p: d.p_window,
        }
    }
}

impl MemristorSection {
    pub fn drift_params(&self) -> anyhow::Result<DriftParams> {
        let dp = DriftParams {
            r_on: self.r_on_ohm,
            r_off: self.r_off_ohm,
            d_width: self.d_m,
            mobility: self.mobility_m2_per_vs,
            p_window: self.p,
            window_kind: match self.window {
                WindowName::Unity => WindowKind::Unity,
                WindowName::Joglekar => WindowKind::Joglekar,
            },
        };
        dp.validate().context("memristor section")?;
        Ok(dp)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodName {
    Zoh,
    Rk4,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimSection {
    pub dt_s: f64,
    pub t_end_s: f64,
    pub method: MethodName,
}

impl Default for SimSection {
    fn default() -> Self {
        let d = SimConfig::default();
        Self {
            dt_s: d.dt,
            t_end_s: d.t_end,
            method: MethodName::Zoh,
        }
    }
}

impl SimSection {
    pub fn sim_config(&self) -> anyhow::Result<SimConfig> {
        let method = match self.method {
            MethodName::Zoh => Method::ZohExact,
            MethodName::Rk4 => Method::Rk4,
        };
        Ok(SimConfig::new(self.dt_s, self.t_end_s, method)?)
    }
}

/// Everything a run needs. Either `preset` or `topology` + `components`
/// names the circuit, never both.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub topology: Option<TopologyName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Components>,
    /// Gain applied to the output row; 1 unless a preset says otherwise.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_scale: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub memristor: Option<MemristorSection>,
    #[serde(default)]
    pub sim: SimSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<PathBuf>,
}

/// The circuit a run operates on, after validation.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    pub label: String,
    pub topology: Topology,
    pub params: CircuitParams,
    pub output_scale: f64,
}

impl RunConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Replaces a preset by the explicit topology, components and output
    /// scale it stands for, so that individual values can be overridden.
    pub fn materialize_preset(&mut self) -> anyhow::Result<()> {
        if let Some(name) = self.preset.take() {
            let p = preset(&name)?;
            if self.components.is_some() {
                bail!("`preset` and `components` are mutually exclusive");
            }
            self.topology.get_or_insert(p.topology.into());
            self.components = Some(Components {
                r_ohm: p.params.r,
                l_henry: p.params.l,
                c_farad: p.params.c_cap,
                r_m_ohm: p.params.r_m,
            });
            self.output_scale.get_or_insert(p.output_scale);
        }
        Ok(())
    }

    pub fn circuit(&self) -> anyhow::Result<Circuit> {
        let scale = self.output_scale.unwrap_or(1.0);
        if !(scale.is_finite() && scale != 0.0) {
            bail!("invalid parameter `output_scale`: must be finite and non-zero, got {scale}");
        }
        if let Some(name) = &self.preset {
            if self.components.is_some() {
                bail!("`preset` and `components` are mutually exclusive");
            }
            let p = preset(name)?;
            if let Some(t) = self.topology {
                if Topology::from(t) != p.topology {
                    bail!(
                        "invalid parameter `topology`: preset `{name}` is {}, got {}",
                        p.topology,
                        Topology::from(t)
                    );
                }
            }
            return Ok(Circuit {
                label: name.clone(),
                topology: p.topology,
                params: p.params,
                output_scale: self.output_scale.unwrap_or(p.output_scale),
            });
        }
        let Some(c) = self.components else {
            bail!("no circuit given: set `preset` or `components`");
        };
        let Some(t) = self.topology else {
            bail!("invalid parameter `topology`: required with explicit components");
        };
        let params = CircuitParams::new(c.r_ohm, c.l_henry, c.c_farad, c.r_m_ohm)?;
        Ok(Circuit {
            label: "custom".into(),
            topology: t.into(),
            params,
            output_scale: scale,
        })
    }
}
