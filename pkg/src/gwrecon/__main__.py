from __future__ import annotations

from gwrecon.cli import main


raise SystemExit(main())
