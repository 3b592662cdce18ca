// Copyright 2026 The qmean Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use thiserror::Error;

/// Errors raised by the simulator, the encoder and the exporter.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A caller supplied a value outside the operation's domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// The requested register would exceed the configured qubit cap.
    #[error("capacity exceeded: {requested} qubits requested, limit is {limit}")]
    Capacity { requested: usize, limit: usize },
    /// The circuit contains an operation the QASM emitter cannot lower.
    #[error("cannot export circuit: {0}")]
    Export(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
