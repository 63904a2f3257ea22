from django.db import migrations, models


class Migration(migrations.Migration):

    dependencies = [
        ("mc_harness", "0001_initial"),
    ]

    operations = [
        migrations.AddField(
            model_name="experimentrun",
            name="tail_mass_counts",
            field=models.JSONField(default=list),
        ),
    ]
