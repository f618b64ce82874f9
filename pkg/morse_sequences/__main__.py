import asyncio
import sys

import uvloop

from .cli import main

asyncio.set_event_loop_policy(uvloop.EventLoopPolicy())  # for speed of event loop

sys.exit(main())
