//! The virtual experiment: phase shifter and beam splitter acting on the two
//! input modes, followed by a detector on output mode 1.

mod detector;
mod loss;
mod observation;
mod sampling;
mod setting;
mod transform;

pub use detector::{
    Detector, DetectorConfig, DetectorRegistry, HomodyneDetector, IdealDetector, Measurement,
    PhotocountDetector, IDEAL, LOSSY_HOMODYNE, LOSSY_PHOTOCOUNT,
};
pub use loss::{
    apply_loss, invert_loss_homodyne, invert_loss_photocount, remove_loss, rescale_transmittance,
    HomodyneCorrection, TransmittanceRescale,
};
pub use observation::{observe_mode1, setting_stream, Mode1Observation};
pub use sampling::{sample_quadratures, sample_variance, VarianceEstimate, HOMODYNE_ANGLES};
pub use setting::BenchSetting;
pub use transform::{bogoliubov, output_covariance, output_mode1_covariance};
