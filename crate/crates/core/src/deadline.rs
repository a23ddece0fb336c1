use std::time::{Duration, Instant};

/// Returned when a computation overran its [`Deadline`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("computation exceeded its time limit")]
pub struct Interrupted;

/// Cooperative wall-clock limit polled by the exponential searches.
#[derive(Debug, Clone)]
pub struct Deadline {
    at: Option<Instant>,
    ticks: u32,
}

const POLL_EVERY: u32 = 256;

impl Deadline {
    pub fn none() -> Self {
        Deadline { at: None, ticks: 0 }
    }

    pub fn after(limit: Duration) -> Self {
        Deadline {
            at: Instant::now().checked_add(limit),
            ticks: 0,
        }
    }

    pub fn from_option(limit: Option<Duration>) -> Self {
        limit.map_or_else(Deadline::none, Deadline::after)
    }

    #[inline]
    pub fn check(&mut self) -> Result<(), Interrupted> {
        let Some(at) = self.at else { return Ok(()) };
        self.ticks += 1;
        if self.ticks.is_multiple_of(POLL_EVERY) && Instant::now() >= at {
            return Err(Interrupted);
        }
        Ok(())
    }
}

impl Default for Deadline {
    fn default() -> Self {
        Deadline::none()
    }
}
