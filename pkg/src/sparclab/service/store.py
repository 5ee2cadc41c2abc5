"""Users, sessions and the per-user folder/file tree.

Metadata lives in an embedded sqlite database; file bytes live on the
server file system keyed by file id.  Every file and folder carries its
full path from the user's root as ``url``.
"""
from __future__ import annotations

import hashlib
import secrets
import sqlite3
import threading
import time
from pathlib import Path

_SCHEMA = """
CREATE TABLE IF NOT EXISTS users (
    id INTEGER PRIMARY KEY,
    username TEXT NOT NULL UNIQUE,
    salt BLOB NOT NULL,
    pw_hash BLOB NOT NULL,
    created_at REAL NOT NULL
);
CREATE TABLE IF NOT EXISTS sessions (
    token TEXT PRIMARY KEY,
    user_id INTEGER NOT NULL REFERENCES users(id),
    expires_at REAL NOT NULL
);
CREATE TABLE IF NOT EXISTS folders (
    id INTEGER PRIMARY KEY,
    owner INTEGER NOT NULL REFERENCES users(id),
    parent INTEGER REFERENCES folders(id),
    name TEXT NOT NULL,
    url TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS files (
    id INTEGER PRIMARY KEY,
    owner INTEGER NOT NULL REFERENCES users(id),
    folder INTEGER REFERENCES folders(id),
    name TEXT NOT NULL,
    url TEXT NOT NULL,
    shared INTEGER NOT NULL DEFAULT 0,
    share_token TEXT
);
"""


class StoreError(Exception):
    def __init__(self, code: str, message: str):
        self.code = code
        super().__init__(message)


class WorkspaceStore:
    def __init__(self, data_dir: Path):
        self.data_dir = Path(data_dir)
        self.blob_dir = self.data_dir / "blobs"
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self.blob_dir.mkdir(parents=True, exist_ok=True)
        self.db_path = self.data_dir / "workspace.db"
        self._lock = threading.RLock()   # tree mutations are serialized
        with self._connect() as conn:
            conn.executescript(_SCHEMA)

    def _connect(self) -> sqlite3.Connection:
        conn = sqlite3.connect(self.db_path)
        conn.row_factory = sqlite3.Row
        conn.execute("PRAGMA foreign_keys = ON")
        return conn

    # -- auth ---------------------------------------------------------------

    @staticmethod
    def _hash(password: str, salt: bytes) -> bytes:
        return hashlib.pbkdf2_hmac("sha256", password.encode("utf-8"), salt, 60_000)

    def register(self, username: str, password: str) -> int:
        if not username or not password:
            raise StoreError("bad-request", "username and password are required")
        salt = secrets.token_bytes(16)
        with self._lock, self._connect() as conn:
            try:
                cur = conn.execute(
                    "INSERT INTO users (username, salt, pw_hash, created_at) VALUES (?,?,?,?)",
                    (username, salt, self._hash(password, salt), time.time()))
            except sqlite3.IntegrityError:
                raise StoreError("duplicate-user", f"username '{username}' is taken") from None
            return cur.lastrowid

    def login(self, username: str, password: str, ttl_sec: float) -> str:
        with self._lock, self._connect() as conn:
            row = conn.execute("SELECT * FROM users WHERE username = ?", (username,)).fetchone()
            if row is None or self._hash(password, row["salt"]) != row["pw_hash"]:
                raise StoreError("bad-credentials", "unknown username or wrong password")
            token = secrets.token_hex(24)
            conn.execute("INSERT INTO sessions (token, user_id, expires_at) VALUES (?,?,?)",
                         (token, row["id"], time.time() + ttl_sec))
            return token

    def logout(self, token: str) -> None:
        with self._lock, self._connect() as conn:
            conn.execute("DELETE FROM sessions WHERE token = ?", (token,))

    def session_user(self, token: str) -> int:
        with self._connect() as conn:
            row = conn.execute("SELECT * FROM sessions WHERE token = ?", (token,)).fetchone()
            if row is None or row["expires_at"] < time.time():
                raise StoreError("invalid-session", "the session is missing or expired")
            return row["user_id"]

    # -- helpers ------------------------------------------------------------

    def _blob(self, file_id: int) -> Path:
        return self.blob_dir / f"{file_id}.sp"

    def _folder(self, conn, user: int, folder_id: int):
        row = conn.execute("SELECT * FROM folders WHERE id = ?", (folder_id,)).fetchone()
        if row is None:
            raise StoreError("not-found", f"folder {folder_id} does not exist")
        if row["owner"] != user:
            raise StoreError("not-authorized", "that folder belongs to another user")
        return row

    def _file(self, conn, user: int, file_id: int):
        row = conn.execute("SELECT * FROM files WHERE id = ?", (file_id,)).fetchone()
        if row is None:
            raise StoreError("not-found", f"file {file_id} does not exist")
        if row["owner"] != user:
            raise StoreError("not-authorized", "that file belongs to another user")
        return row

    def _check_sibling(self, conn, user: int, parent, name: str):
        clause = "parent IS NULL" if parent is None else "parent = ?"
        params = (user, name) if parent is None else (user, name, parent)
        if conn.execute(f"SELECT 1 FROM folders WHERE owner = ? AND name = ? AND {clause}",
                        params).fetchone():
            raise StoreError("name-collision", f"'{name}' already exists here")
        clause = "folder IS NULL" if parent is None else "folder = ?"
        if conn.execute(f"SELECT 1 FROM files WHERE owner = ? AND name = ? AND {clause}",
                        params).fetchone():
            raise StoreError("name-collision", f"'{name}' already exists here")

    @staticmethod
    def _valid_name(name: str) -> str:
        if not name or "/" in name or name in (".", ".."):
            raise StoreError("bad-request", f"invalid name {name!r}")
        return name

    # -- tree operations ------------------------------------------------------

    def create_folder(self, user: int, parent: int | None, name: str) -> dict:
        name = self._valid_name(name)
        with self._lock, self._connect() as conn:
            parent_url = ""
            if parent is not None:
                parent_url = self._folder(conn, user, parent)["url"]
            self._check_sibling(conn, user, parent, name)
            url = f"{parent_url}/{name}"
            cur = conn.execute(
                "INSERT INTO folders (owner, parent, name, url) VALUES (?,?,?,?)",
                (user, parent, name, url))
            return {"id": cur.lastrowid, "name": name, "url": url}

    def create_file(self, user: int, folder: int | None, name: str, content: str) -> dict:
        name = self._valid_name(name)
        with self._lock, self._connect() as conn:
            folder_url = ""
            if folder is not None:
                folder_url = self._folder(conn, user, folder)["url"]
            self._check_sibling(conn, user, folder, name)
            url = f"{folder_url}/{name}"
            cur = conn.execute(
                "INSERT INTO files (owner, folder, name, url) VALUES (?,?,?,?)",
                (user, folder, name, url))
            file_id = cur.lastrowid
            self._blob(file_id).write_text(content, encoding="utf-8")
            return {"id": file_id, "name": name, "url": url}

    def save_file(self, user: int, file_id: int, content: str | None = None,
                  name: str | None = None) -> dict:
        with self._lock, self._connect() as conn:
            row = self._file(conn, user, file_id)
            url = row["url"]
            if name is not None and name != row["name"]:
                name = self._valid_name(name)
                self._check_sibling(conn, user, row["folder"], name)
                url = url.rsplit("/", 1)[0] + "/" + name
                conn.execute("UPDATE files SET name = ?, url = ? WHERE id = ?",
                             (name, url, file_id))
            if content is not None:
                self._blob(file_id).write_text(content, encoding="utf-8")
            return {"id": file_id, "name": name or row["name"], "url": url}

    def rename_folder(self, user: int, folder_id: int, name: str) -> dict:
        name = self._valid_name(name)
        with self._lock, self._connect() as conn:
            row = self._folder(conn, user, folder_id)
            if name != row["name"]:
                self._check_sibling(conn, user, row["parent"], name)
            old_url = row["url"]
            new_url = old_url.rsplit("/", 1)[0] + "/" + name
            conn.execute("UPDATE folders SET name = ?, url = ? WHERE id = ?",
                         (name, new_url, folder_id))
            self._reurl_children(conn, user, folder_id, new_url)
            return {"id": folder_id, "name": name, "url": new_url}

    def _reurl_children(self, conn, user: int, folder_id: int, base_url: str):
        for f in conn.execute("SELECT id, name FROM files WHERE folder = ?", (folder_id,)):
            conn.execute("UPDATE files SET url = ? WHERE id = ?",
                         (f"{base_url}/{f['name']}", f["id"]))
        for sub in conn.execute("SELECT id, name FROM folders WHERE parent = ?", (folder_id,)):
            sub_url = f"{base_url}/{sub['name']}"
            conn.execute("UPDATE folders SET url = ? WHERE id = ?", (sub_url, sub["id"]))
            self._reurl_children(conn, user, sub["id"], sub_url)

    def read_file(self, user: int, file_id: int) -> dict:
        with self._connect() as conn:
            row = self._file(conn, user, file_id)
        content = self._blob(file_id).read_text(encoding="utf-8")
        return {"id": file_id, "name": row["name"], "url": row["url"], "content": content}

    def delete_file(self, user: int, file_id: int) -> None:
        with self._lock, self._connect() as conn:
            self._file(conn, user, file_id)
            conn.execute("DELETE FROM files WHERE id = ?", (file_id,))
        self._blob(file_id).unlink(missing_ok=True)

    def delete_folder(self, user: int, folder_id: int) -> None:
        """Deletes the folder and everything beneath it."""
        with self._lock, self._connect() as conn:
            self._folder(conn, user, folder_id)
            doomed_files: list[int] = []

            def collect(fid: int):
                for f in conn.execute("SELECT id FROM files WHERE folder = ?", (fid,)):
                    doomed_files.append(f["id"])
                for sub in conn.execute("SELECT id FROM folders WHERE parent = ?", (fid,)):
                    collect(sub["id"])

            collect(folder_id)

            def drop(fid: int):
                for sub in conn.execute("SELECT id FROM folders WHERE parent = ?", (fid,)).fetchall():
                    drop(sub["id"])
                conn.execute("DELETE FROM files WHERE folder = ?", (fid,))
                conn.execute("DELETE FROM folders WHERE id = ?", (fid,))

            drop(folder_id)
        for fid in doomed_files:
            self._blob(fid).unlink(missing_ok=True)

    def tree(self, user: int) -> dict:
        with self._connect() as conn:
            folders = conn.execute(
                "SELECT * FROM folders WHERE owner = ? ORDER BY name", (user,)).fetchall()
            files = conn.execute(
                "SELECT * FROM files WHERE owner = ? ORDER BY name", (user,)).fetchall()

        def node(row):
            return {"id": row["id"], "name": row["name"], "url": row["url"],
                    "folders": [], "files": []}

        by_id = {row["id"]: node(row) for row in folders}
        root = {"folders": [], "files": []}
        for row in folders:
            target = by_id[row["parent"]]["folders"] if row["parent"] is not None else root["folders"]
            target.append(by_id[row["id"]])
        for row in files:
            entry = {"id": row["id"], "name": row["name"], "url": row["url"],
                     "shared": bool(row["shared"])}
            target = by_id[row["folder"]]["files"] if row["folder"] is not None else root["files"]
            target.append(entry)
        return root

    # -- sharing --------------------------------------------------------------

    def share_file(self, user: int, file_id: int) -> str:
        with self._lock, self._connect() as conn:
            row = self._file(conn, user, file_id)
            token = row["share_token"] or secrets.token_urlsafe(16)
            conn.execute("UPDATE files SET shared = 1, share_token = ? WHERE id = ?",
                         (token, file_id))
            return token

    def shared_content(self, token: str) -> dict:
        with self._connect() as conn:
            row = conn.execute(
                "SELECT * FROM files WHERE shared = 1 AND share_token = ?", (token,)).fetchone()
        if row is None:
            raise StoreError("not-found", "no shared file under that token")
        content = self._blob(row["id"]).read_text(encoding="utf-8")
        return {"name": row["name"], "content": content}

    def file_by_url(self, user: int, url: str) -> dict | None:
        """Look up a file by its workspace path (used by quoted includes)."""
        with self._connect() as conn:
            row = conn.execute(
                "SELECT * FROM files WHERE owner = ? AND url = ?", (user, url)).fetchone()
        if row is None:
            return None
        return {"id": row["id"], "url": row["url"],
                "content": self._blob(row["id"]).read_text(encoding="utf-8")}
