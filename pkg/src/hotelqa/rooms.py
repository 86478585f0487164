"""Room inventory and date-range availability search.

Bookings occupy half-open night intervals: the nights from check_in
(inclusive) to check_out (exclusive). A booking that ends on a requested
check-in day therefore never blocks that stay.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import date
from pathlib import Path

__all__ = ["RoomsError", "RoomType", "Booking", "RoomInventory", "RoomAvailability", "load_rooms", "available_units", "search_rooms"]


class RoomsError(Exception):
    """The rooms data file is missing required structure or values."""


@dataclass(frozen=True)
class RoomType:
    id: str
    name: str
    capacity: int
    nightly_rate: float
    total_units: int

    def __post_init__(self) -> None:
        if self.capacity < 1:
            raise ValueError("capacity must be >= 1")
        if self.total_units < 1:
            raise ValueError("total_units must be >= 1")


@dataclass(frozen=True)
class Booking:
    room_id: str
    check_in: date
    check_out: date
    units: int

    def __post_init__(self) -> None:
        if self.check_out <= self.check_in:
            raise ValueError("check_out must be after check_in")
        if self.units < 1:
            raise ValueError("units must be >= 1")


@dataclass(frozen=True)
class RoomInventory:
    rooms: tuple[RoomType, ...]
    bookings: tuple[Booking, ...]


@dataclass(frozen=True)
class RoomAvailability:
    id: str
    name: str
    capacity: int
    nightly_rate: float
    available_units: int

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "name": self.name,
            "capacity": self.capacity,
            "nightly_rate": self.nightly_rate,
            "available_units": self.available_units,
        }


def load_rooms(path: str | Path) -> RoomInventory:
    """Load rooms and bookings from a JSON file with ISO-8601 dates."""
    path = Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise RoomsError(f"cannot read rooms file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise RoomsError(f"invalid JSON in rooms file {path}: {exc}") from exc
    if not isinstance(payload, dict) or not isinstance(payload.get("rooms"), list):
        raise RoomsError(f"rooms file {path} must contain a 'rooms' list")

    try:
        rooms = tuple(
            RoomType(
                id=str(rec["id"]),
                name=str(rec["name"]),
                capacity=int(rec["capacity"]),
                nightly_rate=float(rec["nightly_rate"]),
                total_units=int(rec["total_units"]),
            )
            for rec in payload["rooms"]
        )
        bookings = tuple(
            Booking(
                room_id=str(rec["room_id"]),
                check_in=date.fromisoformat(rec["check_in"]),
                check_out=date.fromisoformat(rec["check_out"]),
                units=int(rec["units"]),
            )
            for rec in payload.get("bookings", [])
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise RoomsError(f"malformed rooms file {path}: {exc!r}") from exc

    room_ids = {room.id for room in rooms}
    if len(room_ids) != len(rooms):
        raise RoomsError(f"rooms file {path} contains duplicate room ids")
    for booking in bookings:
        if booking.room_id not in room_ids:
            raise RoomsError(f"booking references unknown room {booking.room_id!r}")
    return RoomInventory(rooms=rooms, bookings=bookings)


def available_units(
    inventory: RoomInventory, room: RoomType, check_in: date, check_out: date
) -> int:
    """Units of a room free on every night of [check_in, check_out)."""
    if check_out <= check_in:
        raise ValueError("check_out must be after check_in")
    nights = (check_out - check_in).days
    booked = [0] * nights
    for booking in inventory.bookings:
        if booking.room_id != room.id:
            continue
        start = max((booking.check_in - check_in).days, 0)
        end = min((booking.check_out - check_in).days, nights)
        for night in range(start, end):
            booked[night] += booking.units
    return room.total_units - max(booked)


def search_rooms(
    inventory: RoomInventory, check_in: date, check_out: date, guests: int
) -> list[RoomAvailability]:
    """Rooms that fit the party with at least one unit free for every night.

    Fully booked or too-small rooms are omitted rather than flagged.
    """
    if guests < 1:
        raise ValueError("guests must be >= 1")
    results = []
    for room in inventory.rooms:
        if room.capacity < guests:
            continue
        units = available_units(inventory, room, check_in, check_out)
        if units >= 1:
            results.append(
                RoomAvailability(
                    id=room.id,
                    name=room.name,
                    capacity=room.capacity,
                    nightly_rate=room.nightly_rate,
                    available_units=units,
                )
            )
    return results
