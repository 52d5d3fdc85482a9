//! Machinery behind the `homcode` binary: JSON experiment configs, the
//! runners that execute them, and the reports they emit.
//!
//! The binary itself only parses arguments, loads config files, and prints
//! reports; everything it does goes through this module, so library users
//! can drive the same experiments programmatically. Reports embed the
//! effective config they ran with, and every source of randomness is
//! seeded, so re-running a report file as a config reproduces it byte for
//! byte.

pub mod config;
pub mod report;
pub mod run;

#[cfg(test)]
mod tests;

pub use config::{
    parse_config_text, parse_group_arg, BlowupConfig, BlowupVariant, CmpArg, CodeKindArg,
    DecodeConfig, DecodeMode, HomextConfig, LambdaConfig, OracleConfig, SrgProbeConfig,
    ThresholdSpec, WordSpec,
};
pub use report::{
    AffineHomJson, BlowupReport, CertDecodeReport, CertificateJson, DecodeReport, HomJson,
    HomextReport, LambdaReport, OracleComparison, OracleEntryJson, OracleReport, SrgProbeReport,
};
pub use run::{
    run_blowup, run_cert_decode, run_decode, run_homext, run_lambda, run_oracle, run_srg_probe,
};
