import os
import logging
from datetime import datetime
from typing import Dict, Any, List, Optional
from reportlab.lib.pagesizes import A4
from reportlab.lib.styles import getSampleStyleSheet, ParagraphStyle
from reportlab.lib.units import inch
from reportlab.platypus import SimpleDocTemplate, Paragraph, Spacer, Table, TableStyle
from reportlab.lib import colors
from reportlab.lib.enums import TA_CENTER

from app import app
from models import ReportWriteError

HEADER_STYLE = [
    ('BACKGROUND', (0, 0), (-1, 0), colors.grey),
    ('TEXTCOLOR', (0, 0), (-1, 0), colors.whitesmoke),
    ('ALIGN', (0, 0), (-1, -1), 'LEFT'),
    ('FONTNAME', (0, 0), (-1, 0), 'Helvetica-Bold'),
    ('FONTSIZE', (0, 0), (-1, 0), 10),
    ('FONTSIZE', (0, 1), (-1, -1), 9),
    ('BOTTOMPADDING', (0, 0), (-1, 0), 8),
    ('BACKGROUND', (0, 1), (-1, -1), colors.beige),
    ('GRID', (0, 0), (-1, -1), 1, colors.black)
]


def _parts(parts: List[int]) -> str:
    return ",".join(str(x) for x in parts) or "0"


def generate_pdf_report(title: str, report_type: str, content: Dict[str, Any],
                        output_path: Optional[str] = None) -> str:
    """Generate a PDF report for an orbit and its codimension 2 leaves"""

    if output_path is None:
        reports_dir = app.reports_dir
        timestamp = datetime.now().strftime('%Y%m%d_%H%M%S')
        output_path = os.path.join(reports_dir, f"{report_type}_{timestamp}.pdf")

    story = []

    styles = getSampleStyleSheet()
    title_style = ParagraphStyle(
        'CustomTitle',
        parent=styles['Heading1'],
        fontSize=18,
        alignment=TA_CENTER,
        spaceAfter=30
    )

    # Title
    story.append(Paragraph(title, title_style))
    story.append(Spacer(1, 20))

    # Metadata
    metadata = [
        ['Report Type:', report_type.replace('_', ' ').title()],
        ['Date:', datetime.now().strftime('%Y-%m-%d %H:%M:%S')],
        ['Schema:', '1'],
    ]

    metadata_table = Table(metadata, colWidths=[2*inch, 4*inch])
    metadata_table.setStyle(TableStyle([
        ('FONTNAME', (0, 0), (-1, -1), 'Helvetica'),
        ('FONTSIZE', (0, 0), (-1, -1), 10),
        ('ALIGN', (0, 0), (0, -1), 'RIGHT'),
        ('ALIGN', (1, 0), (1, -1), 'LEFT'),
        ('VALIGN', (0, 0), (-1, -1), 'TOP'),
        ('ROWBACKGROUNDS', (0, 0), (-1, -1), [colors.lightgrey, colors.white])
    ]))

    story.append(metadata_table)
    story.append(Spacer(1, 30))

    story.extend(_generate_orbit_content(content, styles))

    # Write the file
    try:
        directory = os.path.dirname(output_path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        doc = SimpleDocTemplate(output_path, pagesize=A4)
        doc.build(story)
    except OSError as e:
        logging.error(f"Error writing {report_type} report to {output_path}: {e}")
        raise ReportWriteError(f"Could not write report to {output_path}: {e}") from e

    logging.info(f"Wrote {report_type} report to {output_path}")
    return output_path


def _generate_orbit_content(content: Dict[str, Any], styles) -> List:
    story = []

    story.append(Paragraph("Orbit Invariants", styles['Heading2']))
    story.append(Spacer(1, 12))

    orbit = content.get('orbit', {})
    if orbit:
        namikawa = orbit.get('namikawa', {})
        levi = orbit.get('rigid_levi', {})
        data = [
            ['Invariant', 'Value'],
            ['Algebra', orbit.get('algebra', 'N/A')],
            ['Partition', _parts(orbit.get('partition', []))],
            ['Very even', 'Yes' if orbit.get('very_even') else 'No'],
            ['Dimension', str(orbit.get('dimension', 'N/A'))],
            ['pi_1 (adjoint group)', orbit.get('pi1', 'N/A')],
            ['H^2 of the orbit', str(orbit.get('h2_orbit', 'N/A'))],
            ['H^2 of the universal cover', str(orbit.get('h2_universal_cover', 'N/A'))],
            ['Singular rows', ", ".join(f"{sd['m']} (d={sd['d_m']})" for sd in orbit.get('singular_set', [])) or 'none'],
            ['Rigid Levi', f"{levi.get('notation', 'N/A')} from ({_parts(levi.get('source', []))})"],
            ['Namikawa dimension', str(namikawa.get('dim_total', 'N/A'))],
        ]

        table = Table(data, colWidths=[2.5*inch, 3.5*inch])
        table.setStyle(TableStyle(HEADER_STYLE))
        story.append(table)
        story.append(Spacer(1, 20))

    story.append(Paragraph("Codimension 2 Leaves", styles['Heading2']))
    story.append(Spacer(1, 12))

    children = content.get('children', [])
    if children:
        data = [['Child', 'm', 'Case', 'Closure', 'H_m', 'Cover', 'dim P_m', 'Etale']]
        for child in children:
            data.append([
                _parts(child['child']),
                str(child['m']),
                f"{child['case']} (k={child['k']})",
                child['closure'],
                child['hm'],
                child['cover'],
                f"{child['dim_orbit_leaf']} / {child['dim_cover_leaf']}",
                'Yes' if child['etale'] else 'No',
            ])
        table = Table(data, colWidths=[1.3*inch, 0.4*inch, 0.8*inch, 0.9*inch, 0.5*inch, 0.8*inch, 0.7*inch, 0.5*inch])
        table.setStyle(TableStyle(HEADER_STYLE))
        story.append(table)
    else:
        story.append(Paragraph("The orbit has no codimension 2 children.", styles['Normal']))
    story.append(Spacer(1, 20))

    cover = content.get('cover')
    if cover:
        story.append(Paragraph("Universal Cover", styles['Heading3']))
        story.append(Spacer(1, 6))
        leaves = ", ".join(f"row {leaf['m']}: {leaf['dim']}" for leaf in cover.get('leaves', [])) or "no leaves"
        story.append(Paragraph(
            f"Namikawa dimension {cover['dim_total']} = smooth part {cover['dim_smooth']} + {leaves}. "
            f"The smooth part is derived from the multiplicity 2 values of the partition.",
            styles['Normal']
        ))
    return story

