from pathlib import Path
from os import chdir
from py_md_doc import PyMdDoc


if __name__ == "__main__":
    chdir("..")
    metadata_file = "doc_metadata.json"
    # One output directory per subpackage so that relative links like `../dataio/feature_mode.md` resolve.
    for subpackage in ["dataio", "diffcore", "featnet", "neighbors", "losses", "metrics", "pipeline"]:
        input_directory = Path("pointseg").joinpath(subpackage)
        files = sorted([f.name for f in input_directory.glob("*.py") if f.name != "__init__.py"])
        md = PyMdDoc(input_directory=str(input_directory), files=files, metadata_path=metadata_file)
        md.get_docs(output_directory=f"doc/api/{subpackage}")
    md = PyMdDoc(input_directory="pointseg", files=["errors.py", "exit_code.py", "paths.py"])
    md.get_docs(output_directory="doc/api")
