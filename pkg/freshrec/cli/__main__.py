# -*- coding: utf-8 -*-
"""
允许通过 python -m freshrec.cli 运行
"""

import sys

from freshrec.cli.main import main

if __name__ == '__main__':
    sys.exit(main())
