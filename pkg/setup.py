from setuptools import setup, find_packages

setup(
    name="extremal-surface-audit",
    version="0.1.0",
    author="Sarvesh Mhadgut",
    author_email="sarveshmhadgut@icloud.com",
    packages=find_packages(include=["src", "src.*"]),
    py_modules=["app"],
    entry_points={"console_scripts": ["audit=app:main"]},
)
