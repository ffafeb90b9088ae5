import logging, sys, json
from pathlib import Path
from datetime import datetime, timezone
from typing import Any, Dict, Optional


class CustomFormatter(logging.Formatter):
    """Colourised console formatter."""

    COLORS = {
        'DEBUG': '\033[36m',      # Cyan
        'INFO': '\033[32m',       # Green
        'WARNING': '\033[33m',    # Yellow
        'ERROR': '\033[31m',      # Red
        'CRITICAL': '\033[35m',   # Magenta
        'RESET': '\033[0m'        # Reset
    }

    def __init__(self, fmt: str, use_color: bool = True):
        super().__init__(fmt)
        self.use_color = use_color

    def format(self, record):
        record.asctime = datetime.fromtimestamp(record.created).strftime('%Y-%m-%d %H:%M:%S')
        levelname = record.levelname
        if self.use_color and levelname in self.COLORS:
            record = logging.makeLogRecord(record.__dict__)
            record.levelname = f"{self.COLORS[levelname]}{levelname}{self.COLORS['RESET']}"
        return super().format(record)


class ToolLogger:
    """Centralized logging for the toolkit.
    Console output goes to stderr; stdout is reserved for results."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._initialized = False
        return cls._instance

    def __init__(self):
        if self._initialized:
            return

        self._initialized = True
        self.loggers = {}

    def setup_logger(self, name: str, log_file: Optional[str] = None, level: str = "WARNING", console: bool = True) -> logging.Logger:
        """setup a logger for a specific component (children propagate into it)"""

        if name in self.loggers:
            logger = self.loggers[name]
            logger.setLevel(getattr(logging, level.upper()))
            for handler in logger.handlers:
                if isinstance(handler, logging.StreamHandler) and not isinstance(handler, logging.FileHandler):
                    handler.setLevel(getattr(logging, level.upper()))
            return logger

        logger = logging.getLogger(name)
        logger.setLevel(getattr(logging, level.upper()))
        logger.propagate = False

        logger.handlers.clear()

        if console:
            console_handler = logging.StreamHandler(sys.stderr)
            console_handler.setLevel(getattr(logging, level.upper()))
            console_format = CustomFormatter('%(asctime)s | %(levelname)s | %(name)s | %(message)s',
                                             use_color=sys.stderr.isatty())
            console_handler.setFormatter(console_format)
            logger.addHandler(console_handler)

        if log_file:
            log_path = Path(log_file)
            log_path.parent.mkdir(parents=True, exist_ok=True)

            file_handler = logging.FileHandler(log_file)
            file_handler.setLevel(logging.DEBUG)

            file_format = logging.Formatter('%(asctime)s | %(levelname)s | %(name)s | %(message)s', datefmt='%Y-%m-%d %H:%M:%S')
            file_handler.setFormatter(file_format)
            logger.addHandler(file_handler)

        self.loggers[name] = logger
        return logger

    def get_logger(self, name: str) -> logging.Logger:
        """Get an existing logger or create a new one."""
        if name not in self.loggers:
            return self.setup_logger(name)
        return self.loggers[name]


class StructuredLogger:
    """
    Structured JSON-lines logging for audit trails: suite outcomes,
    homomorphism verdicts and counterexamples.
    """
    def __init__(self, log_file: str):
        self.log_file = Path(log_file)
        self.log_file.parent.mkdir(parents=True, exist_ok=True)

    def log_event(self, event_type: str, data: Dict[str, Any]):
        """Log a structured event as JSON."""
        log_entry = {"timestamp": datetime.now(timezone.utc).isoformat(), "event_type": event_type, "data": data}
        try:
            with open(self.log_file, 'a', encoding='utf-8') as f:
                f.write(json.dumps(log_entry, sort_keys=True) + '\n')
        except OSError as e:
            logging.getLogger(__name__).error(f"Failed to write structured log: {e}")

    def log_suite_result(self, suite: str, cases: int, failures: int, elapsed_ms: float):
        self.log_event('suite_result', {
            'suite': suite,
            'cases': cases,
            'failures': failures,
            'elapsed_ms': round(elapsed_ms, 3),
        })

    def log_verdict(self, instance: str, verdict: str, oracle: str, details: Dict[str, Any]):
        """Log a homomorphism criterion verdict next to the oracle outcome."""
        self.log_event('hom_verdict', {
            'instance': instance,
            'verdict': verdict,
            'oracle': oracle,
            'details': details,
        })

    def log_counterexample(self, instance: str, reason: str, path: str):
        self.log_event('counterexample', {
            'instance': instance,
            'reason': reason,
            'path': path,
        })


_tool_logger = ToolLogger()


def get_logger(name: str, log_file: Optional[str] = None, level: str = 'WARNING') -> logging.Logger:
    """Convenience function to get logger"""
    return _tool_logger.setup_logger(name, log_file, level)


def get_structured_logger(log_file: str = "logs/audit.jsonl") -> StructuredLogger:
    """get structured logger for audit trails."""
    return StructuredLogger(log_file)
