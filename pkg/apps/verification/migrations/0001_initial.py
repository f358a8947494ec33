# Generated by Django 5.0.7 on 2024-06-01 12:00

from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='VerificationRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('subcommand', models.CharField(choices=[('orders', 'Tabla de órdenes'), ('membership', "Pertenencia a B'/M'"), ('pink_closure', 'Clausura de generadores'), ('enumerate_bprime', "Enumeración de B'"), ('frobenius_verify', 'Verificación de Frobenius'), ('label_tree', 'Árbol etiquetado'), ('condition_check', 'Condiciones de clases de cuadrados'), ('verify_all', 'Suites de aceptación')], max_length=50)),
                ('parameters', models.JSONField(blank=True, default=dict)),
                ('passed', models.BooleanField(default=True)),
                ('exit_code', models.PositiveSmallIntegerField(default=0)),
                ('report', models.JSONField(blank=True, default=dict)),
                ('execution_time', models.FloatField(default=0)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'verbose_name': 'corrida de verificación',
                'verbose_name_plural': 'corridas de verificación',
                'ordering': ['-created_at'],
                'indexes': [models.Index(fields=['subcommand'], name='verification_subcmd_idx'), models.Index(fields=['-created_at'], name='verification_created_idx')],
            },
        ),
    ]
