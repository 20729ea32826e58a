# Generated by Django 6.0 on 2026-10-19 10:12

import django.core.validators
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='ComputerEntry',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('index', models.PositiveIntegerField(unique=True, validators=[django.core.validators.MinValueValidator(1)])),
                ('kind', models.CharField(choices=[('lprogram', 'L-program'), ('table', 'Finite table'), ('native', 'Native')], max_length=20)),
                ('name', models.CharField(blank=True, max_length=100)),
                ('payload', models.TextField()),
                ('created_at', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'verbose_name': 'Computer Entry',
                'verbose_name_plural': 'Computer Entries',
                'ordering': ['index'],
            },
        ),
    ]
