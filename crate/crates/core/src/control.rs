//! Binary differential-drive controller: turn left on a detection, turn
//! right otherwise, always at constant forward speed.

use crate::config::ControllerParams;
use crate::sensing::SensorReading;

/// Body-frame twist command. `omega` is positive counter-clockwise (left).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ControlOutput {
    pub v: f64,
    pub omega: f64,
}

impl ControlOutput {
    /// Left and right wheel surface speeds of a differential drive with the
    /// given track width producing this twist.
    pub fn wheel_speeds(&self, track_width: f64) -> (f64, f64) {
        let half = self.omega * track_width / 2.0;
        (self.v - half, self.v + half)
    }
}

pub fn binary_controller(reading: SensorReading, params: &ControllerParams) -> ControlOutput {
    let omega = if reading.value {
        params.turn_rate
    } else {
        -params.turn_rate
    };
    ControlOutput {
        v: params.forward_speed,
        omega,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinaryController {
    pub params: ControllerParams,
}

impl BinaryController {
    pub fn new(params: ControllerParams) -> Self {
        Self { params }
    }

    pub fn command(&self, reading: SensorReading) -> ControlOutput {
        binary_controller(reading, &self.params)
    }
}
