use crate::error::WarpedError;

/// Built-in fiber families. Presets pin the Einstein constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiberPreset {
    UnitSphere,
    FlatTorus,
    GenericEinstein,
}

impl std::fmt::Display for FiberPreset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FiberPreset::UnitSphere => write!(f, "unit-sphere"),
            FiberPreset::FlatTorus => write!(f, "flat-torus"),
            FiberPreset::GenericEinstein => write!(f, "generic-einstein"),
        }
    }
}

/// Einstein fiber in the normalization Ric_fiber = (n−2)·κ·g_fiber, where
/// n is the total warped dimension (fiber dimension + 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiberSpec {
    dim: usize,
    kappa: f64,
    preset: FiberPreset,
}

impl FiberSpec {
    /// Round sphere of unit radius: κ = 1.
    pub fn unit_sphere(dim: usize) -> Result<Self, WarpedError> {
        if dim < 1 {
            return Err(WarpedError::InvalidFiber(
                "fiber dimension must be at least 1".into(),
            ));
        }
        Ok(Self {
            dim,
            kappa: 1.0,
            preset: FiberPreset::UnitSphere,
        })
    }

    /// Flat torus: κ = 0.
    pub fn flat_torus(dim: usize) -> Result<Self, WarpedError> {
        if dim < 1 {
            return Err(WarpedError::InvalidFiber(
                "fiber dimension must be at least 1".into(),
            ));
        }
        Ok(Self {
            dim,
            kappa: 0.0,
            preset: FiberPreset::FlatTorus,
        })
    }

    /// Generic Einstein fiber with free κ. Has no built-in chart.
    pub fn einstein(dim: usize, kappa: f64) -> Result<Self, WarpedError> {
        if dim < 1 {
            return Err(WarpedError::InvalidFiber(
                "fiber dimension must be at least 1".into(),
            ));
        }
        Ok(Self {
            dim,
            kappa,
            preset: FiberPreset::GenericEinstein,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn preset(&self) -> FiberPreset {
        self.preset
    }
}
