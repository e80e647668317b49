# File: packetforge/run_cli.py (Convenience script)
#!/usr/bin/env python3
"""
PacketForge command-line runner
"""
import os
import sys

# Add the repository root to Python path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from packetforge.cli import main  # noqa: E402

if __name__ == "__main__":
    main()
