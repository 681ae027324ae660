use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::conformal::{build_map, ConformalMap, MapCache, DEFAULT_MAP_TOL};
use crate::error::{Error, Result};
use crate::geom::{Point, Polygon};

/// Tolerances and grids of a verification run. Together with the fixture
/// hashes this determines every verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub seed: u64,
    pub tol_map: f64,
    /// Relative tolerance of the adaptive circle quadrature.
    pub tol_quadrature: f64,
    /// Scales every error budget.
    pub budget_multiplier: f64,
    pub r_grid: Vec<f64>,
    /// Finite exponents of the norm chain; `p = ∞` is added when
    /// `include_sup` is set.
    pub p_grid: Vec<f64>,
    pub include_sup: bool,
    /// Radii of the real-part suite.
    pub realpart_radii: Vec<f64>,
    /// Rescale domains with slices of length `l ≥ 2π` by `2π/(1.05 l)`
    /// before the real-part suite instead of skipping them.
    pub realpart_rescale: bool,
    pub radial_budget: usize,
    pub coefficient_count: usize,
    pub coefficient_rho: f64,
    /// Largest coefficient count used for the area identity.
    pub coefficient_area_max: usize,
    pub p0_radius: f64,
    pub p0_max: f64,
    /// Relative width of the final bisection bracket.
    pub p0_tol: f64,
    /// Points of the geometric scan over `[2, p0_max]`.
    pub p0_scan: usize,
    pub n2alpha_alphas: Vec<f64>,
    pub n2alpha_fixtures: Vec<String>,
    pub n2alpha_steps: usize,
    /// Small derivative floor of the variant normalization.
    pub n2alpha_floor: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            tol_map: DEFAULT_MAP_TOL,
            tol_quadrature: 1e-8,
            budget_multiplier: 1.0,
            r_grid: vec![0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99],
            p_grid: vec![2.0, 3.0, 4.0, 8.0, 16.0, 64.0],
            include_sup: true,
            realpart_radii: vec![0.5, 0.9, 0.99],
            realpart_rescale: true,
            radial_budget: 512,
            coefficient_count: 256,
            coefficient_rho: 0.99,
            coefficient_area_max: 65536,
            p0_radius: 0.9,
            p0_max: 200.0,
            p0_tol: 1e-2,
            p0_scan: 25,
            n2alpha_alphas: vec![0.5, 2.0],
            n2alpha_fixtures: vec!["disk".into(), "square".into()],
            n2alpha_steps: 40,
            n2alpha_floor: 0.01,
        }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidInput(m.into()));
        if !(1e-8..=1e-2).contains(&self.tol_map) {
            return bad("tol-map must lie in [1e-8, 1e-2]");
        }
        if !(self.tol_quadrature > 0.0 && self.tol_quadrature < 1e-2) {
            return bad("tol-quadrature must lie in (0, 1e-2)");
        }
        if !(self.budget_multiplier > 0.0 && self.budget_multiplier.is_finite()) {
            return bad("budget multiplier must be positive");
        }
        if self.r_grid.iter().chain(&self.realpart_radii).any(|r| !(*r > 0.0 && *r <= 0.999)) {
            return bad("radii must lie in (0, 0.999]");
        }
        if self.p_grid.iter().any(|p| !(2.0..=64.0).contains(p)) {
            return bad("norm-chain exponents must lie in [2, 64]");
        }
        if !(0.5..=0.99).contains(&self.p0_radius) {
            return bad("p0 search radius must lie in [0.5, 0.99]");
        }
        if !(self.p0_max > 2.0 && self.p0_scan >= 2 && self.p0_tol > 0.0) {
            return bad("p0 search needs p_max > 2, at least 2 scan points and a positive tolerance");
        }
        if !(self.coefficient_count >= 8 && self.coefficient_area_max >= self.coefficient_count) {
            return bad("coefficient counts must satisfy 8 <= n <= area max");
        }
        Ok(())
    }

    /// The norm-chain exponents including `∞` when enabled.
    pub fn exponents(&self) -> Vec<f64> {
        let mut p = self.p_grid.clone();
        if self.include_sup {
            p.push(f64::INFINITY);
        }
        p
    }
}

type MapKey = (String, u64, u64);

/// Shared state of a verification run: the configuration and a map cache
/// keyed by polygon hash and center.
pub struct Harness {
    pub config: VerifyConfig,
    maps: Mutex<HashMap<MapKey, Arc<ConformalMap>>>,
    disk: Option<MapCache>,
}

impl Harness {
    pub fn new(config: VerifyConfig) -> Result<Self> {
        config.validate()?;
        Ok(Harness {
            config,
            maps: Mutex::new(HashMap::new()),
            disk: None,
        })
    }

    /// Also persists maps in `cache`.
    pub fn with_disk_cache(mut self, cache: MapCache) -> Self {
        self.disk = Some(cache);
        self
    }

    /// The map of the unit disk onto `p` with `f(0) = w0`, built at most
    /// once per run.
    pub fn map(&self, p: &Polygon, w0: Point) -> Result<Arc<ConformalMap>> {
        let key = (p.hash_hex(), w0.re.to_bits(), w0.im.to_bits());
        if let Some(m) = self.maps.lock().expect("map cache poisoned").get(&key) {
            return Ok(m.clone());
        }
        let tol = self.config.tol_map;
        let m = Arc::new(match &self.disk {
            Some(c) => c.get_or_build(p, w0, tol)?,
            None => build_map(p, w0, tol)?,
        });
        self.maps
            .lock()
            .expect("map cache poisoned")
            .insert(key, m.clone());
        Ok(m)
    }

    pub fn cached_maps(&self) -> usize {
        self.maps.lock().expect("map cache poisoned").len()
    }

    /// Error budget scaled by the configured multiplier.
    pub fn budget(&self, raw: f64) -> f64 {
        self.config.budget_multiplier * raw
    }
}
