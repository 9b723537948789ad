# -*- coding: utf-8 -*-
"""
Per-user state snapshots: one JSON document per user under a state directory
"""

import json
import logging
from pathlib import Path
from typing import Dict, List, Optional, Union

from ..core.errors import IoError, SnapshotError, ValidationError
from ..core.models import Inventory, UserSessionState, new_user_state

logger = logging.getLogger(__name__)


def render_snapshot(state: UserSessionState) -> str:
    """固定字段顺序与缩进，保证相同状态得到逐字节相同的输出"""
    return json.dumps(state.to_dict(), ensure_ascii=False, indent=2) + '\n'


class SnapshotStore:
    """用户状态存储 - <state_dir>/<user_id>.json"""

    def __init__(self, state_dir: Union[str, Path]):
        self.state_dir = Path(state_dir)

    def _get_snapshot_file(self, user_id: str) -> Path:
        if not user_id or '/' in user_id or '\\' in user_id or user_id in ('.', '..'):
            raise ValidationError(f"user_id {user_id!r} cannot be used as a file name")
        return self.state_dir / f'{user_id}.json'

    def save(self, state: UserSessionState) -> Path:
        """保存一个用户的状态，返回快照路径"""
        snapshot_file = self._get_snapshot_file(state.user_id)
        try:
            self.state_dir.mkdir(parents=True, exist_ok=True)
            snapshot_file.write_text(render_snapshot(state), encoding='utf-8')
        except OSError as e:
            raise IoError(f"cannot write snapshot {snapshot_file}: {e.strerror or e}") from None
        return snapshot_file

    def save_all(self, states: Dict[str, UserSessionState]) -> List[Path]:
        return [self.save(states[user_id]) for user_id in sorted(states)]

    def load(self, user_id: str, inventory: Optional[Inventory] = None) -> Optional[UserSessionState]:
        """
        加载用户状态

        Args:
            user_id: 用户 ID
            inventory: 给定时检查快照数组长度与库存一致

        Returns:
            用户状态，快照不存在时返回 None
        """
        snapshot_file = self._get_snapshot_file(user_id)
        if not snapshot_file.exists():
            return None
        try:
            data = json.loads(snapshot_file.read_text(encoding='utf-8'))
        except OSError as e:
            raise IoError(f"cannot read snapshot {snapshot_file}: {e.strerror or e}") from None
        except UnicodeDecodeError as e:
            raise SnapshotError(f"{snapshot_file}: invalid UTF-8 at byte {e.start}") from None
        except json.JSONDecodeError as e:
            raise SnapshotError(f"{snapshot_file}: invalid JSON: {e.msg}") from None

        state = UserSessionState.from_dict(data)
        if state.user_id != user_id:
            raise SnapshotError(f"{snapshot_file} holds state of user {state.user_id!r}")
        if inventory is not None and len(state) != len(inventory):
            raise SnapshotError(
                f"snapshot of {user_id!r} covers {len(state)} products, inventory has {len(inventory)}"
            )
        return state

    def load_all(self, inventory: Optional[Inventory] = None) -> Dict[str, UserSessionState]:
        states = {}
        for user_id in self.list_users():
            state = self.load(user_id, inventory)
            if state is not None:
                states[user_id] = state
        logger.debug("loaded %d snapshots from %s", len(states), self.state_dir)
        return states

    def reset(self, user_id: str) -> bool:
        """删除用户快照；不存在时返回 False"""
        snapshot_file = self._get_snapshot_file(user_id)
        if not snapshot_file.exists():
            return False
        try:
            snapshot_file.unlink()
        except OSError as e:
            raise IoError(f"cannot delete snapshot {snapshot_file}: {e.strerror or e}") from None
        return True

    def list_users(self) -> List[str]:
        if not self.state_dir.exists():
            return []
        return sorted(path.stem for path in self.state_dir.glob('*.json'))
