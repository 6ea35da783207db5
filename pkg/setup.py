#!/usr/bin/env python3
"""
Periplectic Linkage Setup Script
Installs dependencies, writes a .env template and runs the test suite
"""

import os
import sys
import subprocess


def check_python_version():
    """Check if Python version is compatible"""
    if sys.version_info < (3, 8):
        print("❌ Python 3.8 or higher required")
        print(f"   Current version: {sys.version}")
        return False
    print(f"✅ Python {sys.version.split()[0]} detected")
    return True


def install_dependencies():
    """Install required Python packages"""
    print("\n📦 Installing dependencies...")
    try:
        subprocess.check_call([sys.executable, "-m", "pip", "install", "-r", "requirements.txt"])
        print("✅ Dependencies installed successfully")
        return True
    except subprocess.CalledProcessError:
        print("❌ Failed to install dependencies")
        print("💡 Try: pip install -r requirements.txt")
        return False


def create_env_template():
    """Create a .env with the default settings if none exists"""
    env_file = ".env"

    if os.path.exists(env_file):
        print(f"✅ {env_file} already exists")
        return True

    template = """# Periplectic linkage settings (all optional)

PERIPLECTIC_ELIGIBILITY_MODE=nonstrict
PERIPLECTIC_BUDGET=200000
# PERIPLECTIC_EXCURSION_CAP=12
# PERIPLECTIC_CACHE_PATH=verdicts.jsonl
# PERIPLECTIC_BOX_MARGIN_TOP=
# PERIPLECTIC_BOX_MARGIN_BOTTOM=
PERIPLECTIC_LOG_LEVEL=WARNING
"""

    try:
        with open(env_file, 'w', encoding='utf-8') as f:
            f.write(template)
        print(f"✅ Created {env_file} template")
        return True
    except OSError as e:
        print(f"❌ Failed to create {env_file}: {e}")
        return False


def run_tests():
    """Run the unit tests (PERIPLECTIC_SLOW_TESTS=1 adds the acceptance grids)"""
    print("\n🧪 Running tests...")
    try:
        result = subprocess.run([sys.executable, "-m", "unittest", "discover", "-p", "test_*.py"],
                                capture_output=True, text=True, timeout=1800)
        print(result.stderr)
        return result.returncode == 0
    except subprocess.TimeoutExpired:
        print("⚠️  Tests timed out")
        return False


def main():
    """Main setup workflow"""
    print("🚀 Periplectic Linkage Setup")
    print("=" * 40)

    if not check_python_version():
        return

    if not install_dependencies():
        print("\n⚠️  Setup incomplete - dependency installation failed")
        return

    create_env_template()

    if run_tests():
        print("\n🎉 Setup Complete!")
    else:
        print("\n⚠️  Some tests failed; see the output above")

    print("\nNext steps:")
    print("1. python cli.py jantzen --p 3 -- 3 0")
    print("2. python cli.py reduce --p 3 --parity 0 -- 1 1")
    print("3. python cli.py block-census --p 5 --n 3")
    print("\n📖 See README.md for every subcommand")


if __name__ == "__main__":
    if len(sys.argv) > 1:
        # invoked by a build frontend (pip): metadata lives in pyproject.toml
        from setuptools import setup
        setup()
    else:
        main()
