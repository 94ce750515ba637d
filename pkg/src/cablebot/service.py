"""Remote-control layer: controller operations mapped to HTTP URLs.

One thread per request (stdlib ThreadingHTTPServer); one process-wide
movement lock guards every mutating endpoint, rejecting overlapping
commands with a ``busy`` error instead of queuing them. State queries
never touch the lock. Also serves the browser control panel and hosts
the ``cablebotd`` command-line entry point.
"""

from __future__ import annotations

import argparse
import json
import logging
import mimetypes
import os
import re
import sys
import threading
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from . import config as config_store
from .config import PersistedConfig, load_or_create_config, save_config
from .controller import CableRobotController
from .errors import CablebotError, ConfigError
from .kinematics import InterDistanceSet, Point3
from .winchsim import JOG_DIRECTIONS, SimClock, WinchSimulator

log = logging.getLogger("cablebot.service")

DEFAULT_PORT = 8080

# closed list: every CablebotError code maps to exactly one HTTP status
HTTP_STATUS_FOR_CODE = {
    "busy": 409,
    "already_jogging": 409,
    "not_jogging": 409,
    "faulted": 409,
    "not_zeroed": 409,
    "nothing_to_commit": 409,
    "not_converged": 409,
    "out_of_workspace": 400,
    "out_of_range": 400,
    "cap_exceeded": 400,
    "inconsistent_distances": 400,
    "degenerate_layout": 400,
    "singular_geometry": 400,
    "bad_config": 400,
    "bad_request": 400,
    "unknown_id": 404,
    "not_found": 404,
    "method_not_allowed": 405,
    "internal": 500,
}


@dataclass(frozen=True)
class ApiError:
    code: str
    message: str
    http_status: int

    @classmethod
    def from_exception(cls, exc: CablebotError):
        return cls(code=exc.code, message=str(exc),
                   http_status=HTTP_STATUS_FOR_CODE.get(exc.code, 500))

    def to_payload(self):
        return {"code": self.code, "message": self.message}


@dataclass(frozen=True)
class Route:
    method: str
    pattern: re.Pattern
    name: str
    mutating: bool


def _route(method, pattern, name, mutating):
    return Route(method=method, pattern=re.compile(pattern), name=name,
                 mutating=mutating)


ROUTES = (
    _route("GET", r"^/api/status$", "status", False),
    _route("POST", r"^/api/coil/(?P<coil>[A-Z])/half-turn$", "coil_half_turn", True),
    _route("POST", r"^/api/coil/(?P<coil>[A-Z])/jog$", "coil_jog", True),
    _route("POST", r"^/api/coil/(?P<coil>[A-Z])/stop$", "coil_stop", True),
    _route("POST", r"^/api/coil/(?P<coil>[A-Z])/zero$", "coil_zero", True),
    _route("POST", r"^/api/coil/(?P<coil>[A-Z])/fault$", "coil_fault", True),
    _route("DELETE", r"^/api/coil/(?P<coil>[A-Z])/fault$", "coil_clear_fault", True),
    _route("POST", r"^/api/move/axis$", "move_axis", True),
    _route("POST", r"^/api/move/goto$", "move_goto", True),
    _route("GET", r"^/api/positions$", "positions_list", False),
    _route("POST", r"^/api/positions$", "positions_save", True),
    _route("POST", r"^/api/positions/(?P<id>\d+)/goto$", "positions_goto", True),
    _route("DELETE", r"^/api/positions/(?P<id>\d+)$", "positions_delete", True),
    _route("POST", r"^/api/trilateration/solve$", "trilateration_solve", True),
    _route("POST", r"^/api/trilateration/commit$", "trilateration_commit", True),
    _route("GET", r"^/api/config$", "config_get", False),
    _route("PUT", r"^/api/config$", "config_put", True),
)

_FALLBACK_PAGE = """<!DOCTYPE html>
<html><head><title>cablebot</title></head>
<body><h1>cablebot service</h1>
<p>The robot API is live under <code>/api/</code>. No control panel is
installed; start the server with <code>--static-dir</code> pointing at the
built frontend to serve it here.</p>
</body></html>
"""


class _BadRequest(Exception):
    """Internal: malformed client input, mapped to the bad_request code."""


def _field(body, name, expected=None):
    if name not in body:
        raise _BadRequest(f"missing field {name!r}")
    value = body[name]
    if expected is not None and not isinstance(value, expected):
        raise _BadRequest(f"field {name!r} has the wrong type")
    return value


def _number(body, name):
    value = _field(body, name)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise _BadRequest(f"field {name!r} must be a number")
    return float(value)


def _point_payload(point: Point3):
    return [point.x, point.y, point.z]


def _saved_payload(saved):
    return {"id": saved.id, "label": saved.label,
            "point": _point_payload(saved.point)}


def _orders_payload(orders):
    return {"orders": {coil: order.steps for coil, order in orders.items()}}


class CablebotApp:
    """Application state shared by all request threads."""

    def __init__(self, controller: CableRobotController,
                 driver: WinchSimulator, persisted: PersistedConfig,
                 config_path, static_dir=None):
        self.controller = controller
        self.driver = driver
        self.config_path = config_path
        self.static_dir = os.path.abspath(static_dir) if static_dir else None
        self.language = persisted.ui_default_language
        self.movement_lock = threading.Lock()
        controller.set_config_listener(lambda _config: self.persist())

    def persist(self):
        save_config(self.config_path, self.current_persisted())

    def current_persisted(self) -> PersistedConfig:
        return PersistedConfig.from_robot_config(
            self.controller.config, self.controller.coil_ids,
            ui_default_language=self.language)

    # --- endpoint implementations (named after ROUTES entries) -----------

    def handle_status(self, match, body):
        status = self.controller.status()
        coils = self.controller.coil_ids
        return {
            "lengths": {coil: length
                        for coil, length in zip(coils, status.lengths)},
            "position": {
                "x": status.position.position.x,
                "y": status.position.position.y,
                "z": status.position.position.z,
                "residual": status.position.residual,
                "converged": status.position.converged,
            },
            "coils": {
                coil: {
                    "color": state.color,
                    "zeroed": state.zeroed,
                    "fault": state.fault,
                    "jogging": state.jogging,
                }
                for coil, state in status.coil_states.items()
            },
            "all_zeroed": status.all_zeroed,
        }

    def handle_coil_half_turn(self, match, body):
        direction = _field(body, "direction", str)
        order = self.controller.coil_half_turn(match["coil"], direction)
        return {"coil": match["coil"], "steps": order.steps}

    def handle_coil_jog(self, match, body):
        direction = _field(body, "direction", str)
        if direction not in JOG_DIRECTIONS:
            raise _BadRequest(f"direction must be one of {JOG_DIRECTIONS}")
        speed = None
        if "speed" in body:
            speed = _number(body, "speed")
        self.controller.calibration_start_jog(match["coil"], direction, speed)
        return {"coil": match["coil"], "jogging": True}

    def handle_coil_stop(self, match, body):
        accrued = self.controller.calibration_stop(match["coil"])
        return {"coil": match["coil"], "accrued_steps": accrued}

    def handle_coil_zero(self, match, body):
        self.controller.calibration_save_zero(match["coil"])
        return {"coil": match["coil"], "zeroed": True}

    def handle_coil_fault(self, match, body):
        kind = _field(body, "kind", str)
        self.driver.inject_fault(match["coil"], kind)
        return {"coil": match["coil"], "fault": kind}

    def handle_coil_clear_fault(self, match, body):
        self.driver.clear_fault(match["coil"])
        return {"coil": match["coil"], "fault": None}

    def handle_move_axis(self, match, body):
        axis = _field(body, "axis", str)
        sign = _field(body, "sign", str)
        return _orders_payload(self.controller.axis_jog(axis, sign))

    def handle_move_goto(self, match, body):
        point = Point3(_number(body, "x"), _number(body, "y"),
                       _number(body, "z"))
        relative = body.get("relative", False)
        if not isinstance(relative, bool):
            raise _BadRequest("field 'relative' must be a boolean")
        if relative:
            return _orders_payload(self.controller.shift_relative(point))
        return _orders_payload(self.controller.goto_absolute(point))

    def handle_positions_list(self, match, body):
        return {"positions": [_saved_payload(p)
                              for p in self.controller.list_positions()]}

    def handle_positions_save(self, match, body):
        label = _field(body, "label", str) if "label" in body else ""
        saved = self.controller.save_current_position(label)
        return _saved_payload(saved)

    def handle_positions_goto(self, match, body):
        return _orders_payload(
            self.controller.recall_position(int(match["id"])))

    def handle_positions_delete(self, match, body):
        self.controller.delete_position(int(match["id"]))
        return {"deleted": int(match["id"])}

    def handle_trilateration_solve(self, match, body):
        try:
            distances = InterDistanceSet(
                d_ab=_number(body, "dAB"), d_ac=_number(body, "dAC"),
                d_ad=_number(body, "dAD"), d_bc=_number(body, "dBC"),
                d_bd=_number(body, "dBD"), d_cd=_number(body, "dCD"),
                plane_height=_number(body, "planeHeight"))
        except ValueError as exc:
            raise _BadRequest(str(exc)) from exc
        result = self.controller.apply_trilateration(distances)
        coils = self.controller.coil_ids
        return {
            "anchors": {coil: _point_payload(anchor)
                        for coil, anchor in zip(coils, result.anchors)},
            "residual": result.residual,
        }

    def handle_trilateration_commit(self, match, body):
        self.controller.commit_trilateration()
        coils = self.controller.coil_ids
        return {"anchors": {coil: _point_payload(anchor)
                            for coil, anchor in
                            zip(coils, self.controller.config.anchors)}}

    def handle_config_get(self, match, body):
        return self.current_persisted().to_json_dict()

    def handle_config_put(self, match, body):
        persisted = PersistedConfig.from_json_dict(body)
        robot_config = persisted.to_robot_config()
        if set(persisted.anchors) != set(self.controller.coil_ids):
            raise ConfigError(
                f"config must describe coils {list(self.controller.coil_ids)}")
        self.controller.adopt_config(robot_config)
        for coil in self.controller.coil_ids:
            self.driver.set_params(coil, robot_config.winch_params[coil])
        self.language = persisted.ui_default_language
        self.persist()
        return self.current_persisted().to_json_dict()


class _RequestHandler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"
    server_version = "cablebotd"

    @property
    def app(self) -> CablebotApp:
        return self.server.app

    def log_message(self, fmt, *args):
        log.debug("%s - %s", self.address_string(), fmt % args)

    def do_GET(self):
        self._dispatch("GET")

    def do_POST(self):
        self._dispatch("POST")

    def do_PUT(self):
        self._dispatch("PUT")

    def do_DELETE(self):
        self._dispatch("DELETE")

    # --- plumbing -------------------------------------------------------

    def _dispatch(self, method):
        path = self.path.split("?", 1)[0]
        # drain the body up front so early rejections (busy, 404) leave a
        # clean keep-alive connection
        raw_body = self._drain_body()
        if not path.startswith("/api/"):
            if method == "GET":
                self._serve_static(path)
            else:
                self._send_error_payload(ApiError(
                    "method_not_allowed", "static assets are read-only", 405))
            return

        route, match = self._find_route(method, path)
        if route is None:
            return  # error already sent

        if route.mutating:
            if not self.app.movement_lock.acquire(blocking=False):
                self._send_error_payload(ApiError(
                    "busy", "robot is busy executing another command", 409))
                return
            try:
                self._run_handler(route, match, raw_body)
            finally:
                self.app.movement_lock.release()
        else:
            self._run_handler(route, match, raw_body)

    def _find_route(self, method, path):
        allowed = set()
        for route in ROUTES:
            match = route.pattern.match(path)
            if match:
                if route.method == method:
                    return route, match
                allowed.add(route.method)
        if allowed:
            self._send_error_payload(ApiError(
                "method_not_allowed",
                f"{path} only supports {', '.join(sorted(allowed))}", 405))
        else:
            self._send_error_payload(ApiError(
                "not_found", f"no route for {path}", 404))
        return None, None

    def _run_handler(self, route, match, raw_body):
        try:
            body = self._parse_body(raw_body)
            handler = getattr(self.app, "handle_" + route.name)
            payload = handler(match.groupdict(), body)
        except _BadRequest as exc:
            self._send_error_payload(ApiError("bad_request", str(exc), 400))
        except CablebotError as exc:
            self._send_error_payload(ApiError.from_exception(exc))
        except ValueError as exc:
            self._send_error_payload(ApiError("bad_request", str(exc), 400))
        except Exception:
            log.exception("unhandled error in %s", route.name)
            self._send_error_payload(ApiError(
                "internal", "internal server error", 500))
        else:
            self._send_json(200, payload)

    def _drain_body(self):
        length = int(self.headers.get("Content-Length") or 0)
        return self.rfile.read(length) if length > 0 else b""

    @staticmethod
    def _parse_body(raw):
        if not raw:
            return {}
        try:
            body = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise _BadRequest(f"request body is not valid JSON: {exc}") from exc
        if not isinstance(body, dict):
            raise _BadRequest("request body must be a JSON object")
        return body

    def _send_json(self, status, payload):
        blob = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(blob)))
        self.end_headers()
        self.wfile.write(blob)

    def _send_error_payload(self, error: ApiError):
        self._send_json(error.http_status, error.to_payload())

    def _serve_static(self, path):
        static_dir = self.app.static_dir
        if static_dir is None:
            if path in ("/", "/index.html"):
                blob = _FALLBACK_PAGE.encode("utf-8")
                self.send_response(200)
                self.send_header("Content-Type", "text/html; charset=utf-8")
                self.send_header("Content-Length", str(len(blob)))
                self.end_headers()
                self.wfile.write(blob)
            else:
                self._send_error_payload(ApiError(
                    "not_found", f"no static asset {path}", 404))
            return
        relative = path.lstrip("/") or "index.html"
        full = os.path.abspath(os.path.join(static_dir, relative))
        if not full.startswith(static_dir + os.sep) and full != static_dir:
            self._send_error_payload(ApiError(
                "not_found", "path escapes the static directory", 404))
            return
        if os.path.isdir(full):
            full = os.path.join(full, "index.html")
        if not os.path.isfile(full):
            self._send_error_payload(ApiError(
                "not_found", f"no static asset {path}", 404))
            return
        content_type = mimetypes.guess_type(full)[0] or "application/octet-stream"
        with open(full, "rb") as fh:
            blob = fh.read()
        self.send_response(200)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(blob)))
        self.end_headers()
        self.wfile.write(blob)


class CablebotServer(ThreadingHTTPServer):
    daemon_threads = True
    request_queue_size = 128  # classroom poll storms exceed the default of 5

    def __init__(self, address, app: CablebotApp):
        super().__init__(address, _RequestHandler)
        self.app = app

    @property
    def port(self):
        return self.server_address[1]


def build_server(config_path, port=DEFAULT_PORT, host="127.0.0.1",
                 static_dir=None, clock_mode=SimClock.REALTIME,
                 rate=None) -> CablebotServer:
    """Wire simulator, controller and HTTP server from a config file.

    Writes a default config when the file does not exist; refuses to
    start on a corrupt one (ConfigError propagates, nothing is written).
    """
    persisted = load_or_create_config(config_path)
    robot_config = persisted.to_robot_config()
    coils = tuple(persisted.anchors.keys())
    driver = WinchSimulator(params=dict(persisted.winches), coils=coils,
                            clock=SimClock(clock_mode), rate=rate)
    controller = CableRobotController(driver, robot_config)
    app = CablebotApp(controller, driver, persisted, config_path,
                      static_dir=static_dir)
    return CablebotServer((host, port), app)


def _parse_rate(value):
    if value == "instant":
        return None
    try:
        rate = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(
            "rate must be a number of steps/s or 'instant'")
    if rate <= 0:
        raise argparse.ArgumentTypeError("rate must be positive")
    return rate


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="cablebotd",
        description="Remote-control service for the simulated cable robot.")
    parser.add_argument("--port", type=int, default=DEFAULT_PORT,
                        help="HTTP port (default %(default)s)")
    parser.add_argument("--host", default="0.0.0.0",
                        help="bind address (default %(default)s)")
    parser.add_argument("--config",
                        default=os.path.join(".", config_store.DEFAULT_CONFIG_FILENAME),
                        help="config file path (default %(default)s)")
    parser.add_argument("--static-dir", default=None,
                        help="directory with the built control panel")
    parser.add_argument("--clock", choices=(SimClock.REALTIME, SimClock.MANUAL),
                        default=SimClock.REALTIME,
                        help="simulator clock mode (default %(default)s)")
    parser.add_argument("--rate", type=_parse_rate, default=None,
                        metavar="STEPS_PER_S|instant",
                        help="simulated motor speed; default instant")
    args = parser.parse_args(argv)

    logging.basicConfig(level=logging.INFO,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    try:
        server = build_server(args.config, port=args.port, host=args.host,
                              static_dir=args.static_dir,
                              clock_mode=args.clock, rate=args.rate)
    except ConfigError as exc:
        print(f"cablebotd: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"cablebotd: cannot bind {args.host}:{args.port}: {exc}",
              file=sys.stderr)
        return 1

    log.info("serving on http://%s:%d (config: %s)", args.host, server.port,
             args.config)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        log.info("shutting down")
    finally:
        server.server_close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
