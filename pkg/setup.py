import re
from pathlib import Path
from setuptools import setup, find_packages

readme = Path('README.md').read_text(encoding='utf-8')
# Replace relative markdown links with absolute https links.
readme = re.sub(r'\[(.*?)\]\(doc/(.*?)\)', r'[\1][https://github.com/pointseg/pointseg/blob/main/doc/\2]', readme)

setup(
    name='pointseg',
    version="1.0.0",
    description='Point cloud semantic segmentation with learned feature-space and world-space neighborhoods.',
    long_description=readme,
    long_description_content_type='text/markdown',
    url='https://github.com/pointseg/pointseg',
    license='MIT',
    classifiers=[
        'Development Status :: 4 - Beta',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Artificial Intelligence',
        'License :: OSI Approved :: MIT License',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11'
    ],
    keywords='point cloud semantic segmentation knn k-means metric learning',
    packages=find_packages(exclude=["tests", "experiments", "util"]),
    include_package_data=True,
    package_data={"pointseg": ["data/configs/*.cfg", "data/scenes/*.scene"]},
    install_requires=['numpy', 'scipy', 'tqdm', 'matplotlib', 'py_md_doc', 'overrides'],
    extras_require={"test": ["pytest"]},
    entry_points={"console_scripts": ["pointseg=pointseg.pipeline.cli:main"]},
)
