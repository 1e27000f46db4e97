use thiserror::Error;

/// Errors produced by field, engine, metrics and io operations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum SwarmError {
    #[error("invalid parameter `{name}`: {reason}")]
    Parameter { name: &'static str, reason: String },

    #[error("position ({x}, {y}) is outside the {width}x{height} canvas")]
    OutOfBounds {
        x: usize,
        y: usize,
        width: usize,
        height: usize,
    },

    #[error("channel {channel} does not exist (field has {channels})")]
    BadChannel { channel: usize, channels: usize },

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("undefined input: {0}")]
    Undefined(&'static str),

    #[error("config line {line}: key `{key}`: {reason}")]
    Config {
        line: usize,
        key: String,
        reason: String,
    },

    #[error("snapshot: {0}")]
    Snapshot(String),

    #[error("observer failed at tick {tick}: {reason}")]
    Observer { tick: u64, reason: String },
}

impl SwarmError {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        SwarmError::Parameter {
            name,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, SwarmError>;
