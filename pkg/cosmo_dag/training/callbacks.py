"""
CallbackManager - Routes training events to registered listeners
"""
from typing import Any, Callable, Dict, List

EPOCH_END = "epoch_end"
TRAIN_END = "train_end"


class CallbackManager:
    """Manages training event callbacks"""

    def __init__(self):
        self.callbacks: Dict[str, List[Callable[[Any], None]]] = {}

    def register_callback(self, event_type: str, callback: Callable[[Any], None]):
        """Register a callback for a specific event type"""
        self.callbacks.setdefault(event_type, []).append(callback)

    def unregister_callback(self, event_type: str, callback: Callable[[Any], None]):
        """Unregister a callback for a specific event type"""
        if event_type in self.callbacks:
            self.callbacks[event_type].remove(callback)

    def emit(self, event_type: str, payload: Any = None):
        """Call every callback registered for `event_type` in registration order"""
        for callback in self.callbacks.get(event_type, []):
            callback(payload)
