//! Session driver shared by every connection.
//!
//! One task owns the [`Session`]. Connections push decoded commands into its
//! queue and get their own outbound channel; everything a client sees,
//! including its private errors, is sent from the driver so per-client
//! ordering follows queue order.

use std::collections::BTreeMap;
use std::time::Duration;

use tokio::sync::mpsc::{self, error::TryRecvError, UnboundedReceiver, UnboundedSender};
use tokio::task::JoinHandle;
use tokio::time::Instant;

use super::protocol::{ClientCommand, DatasetSummary, ServerMessage};
use crate::model::describe_layers;
use crate::session::{Session, SessionError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pacing {
    /// Wait `Δt / rate` of wall-clock time between frames.
    RealTime,
    /// Step as soon as the command queue is empty.
    Headless,
}

enum Input {
    Connect { id: u64, outbox: UnboundedSender<ServerMessage> },
    Command { id: u64, cmd: ClientCommand },
    Reply { id: u64, msg: Box<ServerMessage> },
    Shutdown,
}

/// Cheap handle used to open connections to a running hub.
#[derive(Clone)]
pub struct HubHandle {
    queue: UnboundedSender<Input>,
    next_id: std::sync::Arc<std::sync::atomic::AtomicU64>,
}

impl HubHandle {
    /// Registers a client. Its first message is HELLO, followed by
    /// LAYER_STATE and the current FRAME.
    pub fn connect(&self) -> Connection {
        let id = self.next_id.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        let (outbox, inbox) = mpsc::unbounded_channel();
        let _ = self.queue.send(Input::Connect { id, outbox });
        Connection { id, inbox, queue: self.queue.clone() }
    }
}

pub struct Hub {
    handle: HubHandle,
    task: JoinHandle<()>,
}

impl Hub {
    pub fn spawn(session: Session, pacing: Pacing) -> Hub {
        let (queue, rx) = mpsc::unbounded_channel();
        let task = tokio::spawn(Driver::new(session, pacing).run(rx));
        Hub {
            handle: HubHandle { queue, next_id: Default::default() },
            task,
        }
    }

    pub fn handle(&self) -> HubHandle {
        self.handle.clone()
    }

    pub fn connect(&self) -> Connection {
        self.handle.connect()
    }

    /// Sends END to every client and stops the driver.
    pub async fn shutdown(self) {
        let _ = self.handle.queue.send(Input::Shutdown);
        let _ = self.task.await;
    }
}

/// One client's view of the hub. Dropping it disconnects.
pub struct Connection {
    id: u64,
    inbox: UnboundedReceiver<ServerMessage>,
    queue: UnboundedSender<Input>,
}

impl Connection {
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn command(&self, cmd: ClientCommand) {
        let _ = self.queue.send(Input::Command { id: self.id, cmd });
    }

    /// Decodes raw client bytes; undecodable input is answered with ERROR on
    /// this connection only.
    pub fn submit(&self, bytes: &[u8]) {
        let input = match ClientCommand::decode(bytes) {
            Ok(cmd) => Input::Command { id: self.id, cmd },
            Err(e) => Input::Reply { id: self.id, msg: Box::new(e.to_message()) },
        };
        let _ = self.queue.send(input);
    }

    /// `None` once the hub has shut down.
    pub async fn recv(&mut self) -> Option<ServerMessage> {
        self.inbox.recv().await
    }

    pub fn try_recv(&mut self) -> Option<ServerMessage> {
        self.inbox.try_recv().ok()
    }
}

struct Client {
    outbox: UnboundedSender<ServerMessage>,
    seq: u64,
}

struct Driver {
    session: Session,
    pacing: Pacing,
    clients: BTreeMap<u64, Client>,
    due: Option<Instant>,
}

impl Driver {
    fn new(session: Session, pacing: Pacing) -> Self {
        Driver { session, pacing, clients: BTreeMap::new(), due: None }
    }

    async fn run(mut self, mut rx: UnboundedReceiver<Input>) {
        loop {
            let next = if self.session.is_playing() {
                match self.pacing {
                    Pacing::Headless => match rx.try_recv() {
                        Ok(input) => Some(input),
                        Err(TryRecvError::Empty) => None,
                        Err(TryRecvError::Disconnected) => break,
                    },
                    Pacing::RealTime => {
                        let delay = self.session.next_frame_delay().unwrap_or(Duration::ZERO);
                        let due = *self.due.get_or_insert_with(|| Instant::now() + delay);
                        tokio::select! {
                            biased;
                            input = rx.recv() => match input {
                                Some(input) => Some(input),
                                None => break,
                            },
                            _ = tokio::time::sleep_until(due) => None,
                        }
                    }
                }
            } else {
                match rx.recv().await {
                    Some(input) => Some(input),
                    None => break,
                }
            };
            match next {
                Some(Input::Shutdown) => {
                    self.broadcast(|| ServerMessage::End);
                    break;
                }
                Some(input) => self.handle(input),
                None => {
                    self.advance();
                    if self.pacing == Pacing::Headless {
                        tokio::task::yield_now().await;
                    }
                }
            }
        }
        tracing::debug!("hub driver stopped");
    }

    fn handle(&mut self, input: Input) {
        match input {
            Input::Connect { id, outbox } => {
                let dataset = self.session.dataset();
                let hello = ServerMessage::Hello {
                    summary: DatasetSummary::of(dataset),
                    geometry: *dataset.geometry(),
                    team_colors: dataset.meta.team_colors.clone(),
                    layers: describe_layers(),
                    enabled: self.session.enabled_layers().clone(),
                };
                let mut client = Client { outbox, seq: 0 };
                let _ = client.outbox.send(hello);
                let _ = client.outbox.send(self.layer_state());
                let bundle = Box::new(self.session.compose());
                let _ = client.outbox.send(ServerMessage::Frame { seq: 0, bundle });
                client.seq = 1;
                tracing::debug!(client = id, "client connected");
                self.clients.insert(id, client);
            }
            Input::Reply { id, msg } => self.send_to(id, *msg),
            Input::Command { id, cmd } => self.apply(id, cmd),
            Input::Shutdown => unreachable!("handled by the run loop"),
        }
    }

    fn apply(&mut self, id: u64, cmd: ClientCommand) {
        let result = match cmd {
            ClientCommand::Toggle { layer, on } => self.session.toggle(&layer, on),
            ClientCommand::Play if self.session.at_end() => Err(SessionError::EndOfGame),
            ClientCommand::Play => {
                self.session.play();
                Ok(())
            }
            ClientCommand::Pause => {
                self.session.pause();
                Ok(())
            }
            ClientCommand::Rate { multiplier } => self.session.set_rate(multiplier),
            ClientCommand::Seek { t_ms } => match self.session.seek(t_ms) {
                Ok(()) => {
                    self.due = None;
                    let bundle = self.session.compose();
                    self.broadcast_frame(bundle);
                    return;
                }
                Err(e) => Err(e),
            },
            ClientCommand::Ping => {
                let state = self.layer_state();
                self.send_to(id, state);
                return;
            }
        };
        match result {
            Ok(()) => {
                self.due = None;
                let state = self.layer_state();
                self.broadcast(|| state.clone());
            }
            Err(e) => {
                let msg = ServerMessage::Error { code: e.code().into(), detail: e.to_string() };
                self.send_to(id, msg);
            }
        }
    }

    fn advance(&mut self) {
        self.due = None;
        let Ok(bundle) = self.session.step() else {
            self.session.pause();
            return;
        };
        let fired = bundle.events_fired.clone();
        self.broadcast_frame(bundle);
        for event in fired {
            self.broadcast(|| ServerMessage::Event { event: event.clone() });
        }
        if self.session.at_end() {
            self.session.pause();
            let state = self.layer_state();
            self.broadcast(|| state.clone());
        }
    }

    fn layer_state(&self) -> ServerMessage {
        ServerMessage::LayerState {
            enabled: self.session.enabled_layers().clone(),
            playing: self.session.is_playing(),
            rate: self.session.rate(),
        }
    }

    fn send_to(&mut self, id: u64, msg: ServerMessage) {
        if let Some(c) = self.clients.get(&id) {
            if c.outbox.send(msg).is_err() {
                self.clients.remove(&id);
            }
        }
    }

    fn broadcast(&mut self, msg: impl Fn() -> ServerMessage) {
        self.clients.retain(|_, c| c.outbox.send(msg()).is_ok());
    }

    fn broadcast_frame(&mut self, bundle: crate::session::FrameBundle) {
        let bundle = Box::new(bundle);
        self.clients.retain(|_, c| {
            let seq = c.seq;
            c.seq += 1;
            c.outbox.send(ServerMessage::Frame { seq, bundle: bundle.clone() }).is_ok()
        });
    }
}
